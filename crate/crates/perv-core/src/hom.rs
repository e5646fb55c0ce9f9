//! The space of morphisms between two diagram objects, computed by solving
//! the commutation constraints as one linear system over the base ring.

use exact_linalg::{
    solve_hom_constraints, HomEquation, HomTerm, HomUnknown, ModuleMap, Ring,
};

use crate::error::PervError;
use crate::morphism::PervMorphism;
use crate::object::PervObject;

/// Generators of `Hom(P, Q)` as a module over the base ring.
///
/// Over a field the generators are a basis and `dimension` is its length.
/// Over ℤ they generate the hom group but are not claimed independent, so
/// `dimension` is `None`.
#[derive(Debug, Clone)]
pub struct HomSpace<R: Ring> {
    pub generators: Vec<PervMorphism<R>>,
    pub dimension: Option<usize>,
}

pub fn hom_space<R: Ring>(
    source: &PervObject<R>,
    target: &PervObject<R>,
) -> Result<HomSpace<R>, PervError> {
    let r = source.branches();
    if target.branches() != r {
        return Err(PervError::Input(format!(
            "hom between objects with {r} and {} branches",
            target.branches()
        )));
    }
    if source.ring() != target.ring() {
        return Err(PervError::Input("hom between objects over different rings".to_string()));
    }
    let ring = source.ring();
    let one = ring.one();
    let minus_one = ring.neg(&one);

    // Unknowns: X_i = aᵢ for i < r, X_r = b.
    let mut unknowns = Vec::with_capacity(r + 1);
    for i in 0..r {
        unknowns.push(HomUnknown {
            domain: source.psi(i).clone(),
            codomain: target.psi(i).clone(),
        });
    }
    unknowns.push(HomUnknown { domain: source.phi().clone(), codomain: target.phi().clone() });

    let mut equations = Vec::with_capacity(2 * r);
    for i in 0..r {
        // b∘canᵢ − can'ᵢ∘aᵢ = 0  (maps Ψᵢ(P) → Φ(Q))
        equations.push(HomEquation {
            terms: vec![
                HomTerm {
                    coeff: one.clone(),
                    unknown: r,
                    post: ModuleMap::identity(target.phi()),
                    pre: source.can(i).clone(),
                },
                HomTerm {
                    coeff: minus_one.clone(),
                    unknown: i,
                    post: target.can(i).clone(),
                    pre: ModuleMap::identity(source.psi(i)),
                },
            ],
            rhs: ModuleMap::zero_map(source.psi(i).clone(), target.phi().clone()),
        });
        // aᵢ∘varᵢ − var'ᵢ∘b = 0  (maps Φ(P) → Ψᵢ(Q))
        equations.push(HomEquation {
            terms: vec![
                HomTerm {
                    coeff: one.clone(),
                    unknown: i,
                    post: ModuleMap::identity(target.psi(i)),
                    pre: source.var(i).clone(),
                },
                HomTerm {
                    coeff: minus_one.clone(),
                    unknown: r,
                    post: target.var(i).clone(),
                    pre: ModuleMap::identity(source.phi()),
                },
            ],
            rhs: ModuleMap::zero_map(source.phi().clone(), target.psi(i).clone()),
        });
    }

    let sol = solve_hom_constraints(&unknowns, &equations)
        .map_err(|e| PervError::Algebra(e.to_string()))?;
    let generators = sol
        .homogeneous
        .into_iter()
        .map(|tuple| {
            let b = tuple[r].clone();
            let a = tuple[..r].to_vec();
            PervMorphism::new(source.clone(), target.clone(), a, b)
                .expect("solver output satisfies the commutation constraints")
        })
        .collect::<Vec<_>>();
    let dimension = if ring.is_field() { Some(generators.len()) } else { None };
    Ok(HomSpace { generators, dimension })
}
