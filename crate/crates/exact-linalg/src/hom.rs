//! Solving linear systems whose unknowns are module maps.
//!
//! A constraint system consists of unknown maps `X_u` and equations
//! `Σ coeff · post ∘ X_u ∘ pre = rhs`. Everything linear in the matrix
//! entries of the unknowns fits this shape: commutation squares, descent
//! conditions, intertwiners. The solver flattens the entries into scalar
//! variables, adds one congruence variable per torsion condition (an entry
//! constrained "mod e" gets a companion `e·aux` column), and reads the
//! solution space off one Smith normal form.
//!
//! Over a field the homogeneous generators form a basis; over ℤ they are a
//! generating set for the solution group, which is all the callers need.

use crate::error::LinalgError;
use crate::map::ModuleMap;
use crate::mat::Mat;
use crate::module::FGModule;
use crate::ring::Ring;
use crate::smith::smith;

/// Shape of one unknown map.
#[derive(Debug, Clone)]
pub struct HomUnknown<R: Ring> {
    pub domain: FGModule<R>,
    pub codomain: FGModule<R>,
}

/// One summand `coeff · post ∘ X_unknown ∘ pre` of an equation.
#[derive(Debug, Clone)]
pub struct HomTerm<R: Ring> {
    pub coeff: R::Elem,
    pub unknown: usize,
    pub post: ModuleMap<R>,
    pub pre: ModuleMap<R>,
}

/// An equation between maps with a fixed source and target.
#[derive(Debug, Clone)]
pub struct HomEquation<R: Ring> {
    pub terms: Vec<HomTerm<R>>,
    pub rhs: ModuleMap<R>,
}

#[derive(Debug, Clone)]
pub struct HomSolution<R: Ring> {
    /// One solution of the full system (`None` when inconsistent). For a
    /// homogeneous system this is the tuple of zero maps.
    pub particular: Option<Vec<ModuleMap<R>>>,
    /// Generators of the homogeneous solution space, one tuple of maps per
    /// generator, zero tuples and duplicates removed. A basis over a field.
    pub homogeneous: Vec<Vec<ModuleMap<R>>>,
}

struct RowBuilder<R: Ring> {
    ring: R,
    n_x: usize,
    n_aux: usize,
    rows: Vec<Vec<(usize, R::Elem)>>,
    rhs: Vec<R::Elem>,
}

impl<R: Ring> RowBuilder<R> {
    fn new(ring: R, n_x: usize) -> Self {
        RowBuilder { ring, n_x, n_aux: 0, rows: Vec::new(), rhs: Vec::new() }
    }

    fn fresh_aux(&mut self) -> usize {
        let idx = self.n_x + self.n_aux;
        self.n_aux += 1;
        idx
    }

    fn push(&mut self, row: Vec<(usize, R::Elem)>, rhs: R::Elem) {
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    fn materialize(&self) -> (Mat<R>, Vec<R::Elem>) {
        let cols = self.n_x + self.n_aux;
        let mut m = Mat::zero(&self.ring, self.rows.len(), cols);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, c) in row {
                let v = self.ring.add(m.at(i, *j), c);
                m.set(i, *j, v);
            }
        }
        (m, self.rhs.clone())
    }
}

pub fn solve_hom_constraints<R: Ring>(
    unknowns: &[HomUnknown<R>],
    equations: &[HomEquation<R>],
) -> Result<HomSolution<R>, LinalgError> {
    let ring = match unknowns.first() {
        Some(u) => u.domain.ring().clone(),
        None => {
            return Ok(HomSolution { particular: Some(Vec::new()), homogeneous: Vec::new() })
        }
    };

    // Flatten unknown entries: entry (i, j) of X_u sits at offset[u] + i*cols_u + j.
    let mut offsets = Vec::with_capacity(unknowns.len());
    let mut n_x = 0usize;
    for u in unknowns {
        if u.domain.ring() != &ring || u.codomain.ring() != &ring {
            return Err(LinalgError::RingMismatch(
                ring.kind().to_string(),
                u.domain.ring().kind().to_string(),
            ));
        }
        offsets.push(n_x);
        n_x += u.codomain.num_gens() * u.domain.num_gens();
    }
    let var_of = |u: usize, i: usize, j: usize| offsets[u] + i * unknowns[u].domain.num_gens() + j;

    let mut b = RowBuilder::new(ring.clone(), n_x);

    // Well-definedness of each unknown: d_j · X[i,j] ≡ 0 (mod e_i on torsion
    // rows, exactly 0 on free rows).
    for (u, shape) in unknowns.iter().enumerate() {
        for j in 0..shape.domain.num_gens() {
            let Some(dj) = shape.domain.annihilator(j).cloned() else { continue };
            for i in 0..shape.codomain.num_gens() {
                let mut row = vec![(var_of(u, i, j), dj.clone())];
                if let Some(ei) = shape.codomain.annihilator(i).cloned() {
                    let aux = b.fresh_aux();
                    row.push((aux, ei));
                }
                b.push(row, ring.zero());
            }
        }
    }

    // The equations themselves, one scalar row per matrix entry.
    for eq in equations {
        let src = eq.rhs.domain().clone();
        let dst = eq.rhs.codomain().clone();
        for term in &eq.terms {
            let shape = unknowns.get(term.unknown).ok_or_else(|| {
                LinalgError::Incompatible(format!("equation references unknown #{}", term.unknown))
            })?;
            if term.pre.domain() != &src
                || term.pre.codomain() != &shape.domain
                || term.post.domain() != &shape.codomain
                || term.post.codomain() != &dst
            {
                return Err(LinalgError::Incompatible(
                    "hom equation term does not typecheck".to_string(),
                ));
            }
        }
        for r in 0..dst.num_gens() {
            for c in 0..src.num_gens() {
                let mut row: Vec<(usize, R::Elem)> = Vec::new();
                for term in &eq.terms {
                    let shape = &unknowns[term.unknown];
                    for k in 0..shape.codomain.num_gens() {
                        let post_rk = term.post.matrix().at(r, k);
                        if ring.is_zero(post_rk) {
                            continue;
                        }
                        for l in 0..shape.domain.num_gens() {
                            let pre_lc = term.pre.matrix().at(l, c);
                            if ring.is_zero(pre_lc) {
                                continue;
                            }
                            let coeff = ring.mul(&term.coeff, &ring.mul(post_rk, pre_lc));
                            if !ring.is_zero(&coeff) {
                                row.push((var_of(term.unknown, k, l), coeff));
                            }
                        }
                    }
                }
                // On a torsion row of the target the equation only holds mod
                // the invariant factor.
                if let Some(er) = dst.annihilator(r).cloned() {
                    let aux = b.fresh_aux();
                    row.push((aux, er));
                }
                b.push(row, eq.rhs.matrix().at(r, c).clone());
            }
        }
    }

    let (m, rhs) = b.materialize();
    let s = smith(&m);

    let extract = |solution: &[R::Elem]| -> Vec<ModuleMap<R>> {
        unknowns
            .iter()
            .enumerate()
            .map(|(u, shape)| {
                let rows = shape.codomain.num_gens();
                let cols = shape.domain.num_gens();
                let mat = Mat::from_fn(&ring, rows, cols, |i, j| solution[var_of(u, i, j)].clone());
                ModuleMap::new(shape.domain.clone(), shape.codomain.clone(), mat)
                    .expect("solver rows enforce well-definedness")
            })
            .collect()
    };

    let homogeneous_raw = s.kernel_basis();
    let mut homogeneous: Vec<Vec<ModuleMap<R>>> = Vec::new();
    for col in 0..homogeneous_raw.cols() {
        let tuple = extract(&homogeneous_raw.column(col));
        if tuple.iter().all(|f| f.is_zero_map()) {
            continue;
        }
        if homogeneous.contains(&tuple) {
            continue;
        }
        homogeneous.push(tuple);
    }

    let particular = if rhs.iter().all(|e| ring.is_zero(e)) {
        Some(
            unknowns
                .iter()
                .map(|shape| ModuleMap::zero_map(shape.domain.clone(), shape.codomain.clone()))
                .collect(),
        )
    } else {
        s.solve(&rhs).map(|sol| extract(&sol))
    };

    Ok(HomSolution { particular, homogeneous })
}
