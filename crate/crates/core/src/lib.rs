//! Exact Auslander-Reiten theory for representations of finite acyclic quivers.

pub mod artheory;
pub mod exactlin;
pub mod knit;
pub mod mesh;
pub mod quiver;
pub mod rep;
pub mod standardcheck;
