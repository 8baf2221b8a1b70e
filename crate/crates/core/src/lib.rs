//! Exact computation of primitive cohomology invariants of symplectic
//! four-manifolds `S^1 x Y_f` fibered by punctured surfaces.
//!
//! - [`exactla`]: rational matrices, subspaces, Jordan census, infinitesimal numbers.
//! - [`surfaces`]: homology actions of mapping class words on punctured tori and spheres.
//! - [`wang`]: Betti and primitive Betti numbers from a monodromy.
//! - [`fibration`]: puncture paths and their crossings in a torus fiber.
//! - [`graphlink`]: fibrations of the graph links `K^(2n)` and their `Δ'(t)`.

pub mod exactla;
pub mod fibration;
pub mod graphlink;
pub mod surfaces;
pub mod wang;
