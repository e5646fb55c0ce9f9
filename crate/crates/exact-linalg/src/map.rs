//! Maps between finitely generated modules, with exact kernels, images and
//! cokernels computed through presentations.
//!
//! A map is a matrix with `codomain.num_gens()` rows and `domain.num_gens()`
//! columns acting on column vectors of coordinates. Entries in torsion rows
//! live mod the row's invariant factor and are kept reduced, so two maps are
//! equal iff their stored matrices are. The constructor checks the matrix is
//! actually well defined on the domain relations: a torsion generator with
//! annihilator `d` must land on an element killed by `d`.
//!
//! Kernels, images and cokernels all come back as canonical modules together
//! with the structure maps, and compose the way the abelian-category axioms
//! demand; this is checked aggressively by the property tests.

use crate::error::LinalgError;
use crate::mat::Mat;
use crate::module::{canonicalize_presentation, FGModule};
use crate::ring::Ring;
use crate::smith::smith;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap<R: Ring> {
    domain: FGModule<R>,
    codomain: FGModule<R>,
    matrix: Mat<R>,
}

impl<R: Ring> ModuleMap<R> {
    /// Validating constructor; reduces torsion-row entries and rejects
    /// matrices that do not respect the domain relations.
    pub fn new(
        domain: FGModule<R>,
        codomain: FGModule<R>,
        matrix: Mat<R>,
    ) -> Result<Self, LinalgError> {
        let ring = domain.ring().clone();
        if codomain.ring() != &ring || matrix.ring() != &ring {
            return Err(LinalgError::RingMismatch(
                ring.kind().to_string(),
                codomain.ring().kind().to_string(),
            ));
        }
        if matrix.rows() != codomain.num_gens() || matrix.cols() != domain.num_gens() {
            return Err(LinalgError::BadShape {
                rows: codomain.num_gens(),
                cols: domain.num_gens(),
                got_rows: matrix.rows(),
                got_cols: matrix.cols(),
            });
        }
        let reduced = Mat::from_fn(&ring, matrix.rows(), matrix.cols(), |i, j| {
            codomain.reduce_entry(i, matrix.at(i, j))
        });
        // Well-definedness: annihilators of domain generators must act as
        // zero on the image of that generator.
        for j in 0..domain.num_gens() {
            let Some(dj) = domain.annihilator(j) else { continue };
            for i in 0..codomain.num_gens() {
                let moved = ring.mul(dj, reduced.at(i, j));
                let ok = match codomain.annihilator(i) {
                    None => ring.is_zero(&moved),
                    Some(ei) => ring.divides(ei, &moved),
                };
                if !ok {
                    return Err(LinalgError::NotWellDefined { row: i, col: j });
                }
            }
        }
        Ok(ModuleMap { domain, codomain, matrix: reduced })
    }

    pub fn zero_map(domain: FGModule<R>, codomain: FGModule<R>) -> Self {
        let m = Mat::zero(domain.ring(), codomain.num_gens(), domain.num_gens());
        ModuleMap::new(domain, codomain, m).expect("zero map is always well defined")
    }

    pub fn identity(module: &FGModule<R>) -> Self {
        let m = Mat::identity(module.ring(), module.num_gens());
        ModuleMap::new(module.clone(), module.clone(), m).expect("identity is well defined")
    }

    /// `c · identity` on a module.
    pub fn scalar(module: &FGModule<R>, c: &R::Elem) -> Self {
        let m = Mat::identity(module.ring(), module.num_gens()).scale(c);
        ModuleMap::new(module.clone(), module.clone(), m).expect("scalars are well defined")
    }

    pub fn domain(&self) -> &FGModule<R> {
        &self.domain
    }
    pub fn codomain(&self) -> &FGModule<R> {
        &self.codomain
    }
    pub fn matrix(&self) -> &Mat<R> {
        &self.matrix
    }
    pub fn ring(&self) -> &R {
        self.domain.ring()
    }

    pub fn is_zero_map(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Apply to a coordinate vector; the result is reduced.
    pub fn apply(&self, coords: &[R::Elem]) -> Vec<R::Elem> {
        let out = self.matrix.mul_vec(coords);
        out.iter()
            .enumerate()
            .map(|(i, e)| self.codomain.reduce_entry(i, e))
            .collect()
    }

    /// `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &Self) -> Result<Self, LinalgError> {
        if inner.codomain != self.domain {
            return Err(LinalgError::Incompatible(format!(
                "composition mismatch: inner codomain {} vs outer domain {}",
                inner.codomain.describe(),
                self.domain.describe()
            )));
        }
        ModuleMap::new(
            inner.domain.clone(),
            self.codomain.clone(),
            self.matrix.mul(&inner.matrix),
        )
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(LinalgError::Incompatible(
                "sum of maps with different (co)domains".to_string(),
            ));
        }
        ModuleMap::new(
            self.domain.clone(),
            self.codomain.clone(),
            self.matrix.add(&other.matrix),
        )
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LinalgError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ModuleMap::new(self.domain.clone(), self.codomain.clone(), self.matrix.neg())
            .expect("negation preserves well-definedness")
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        ModuleMap::new(self.domain.clone(), self.codomain.clone(), self.matrix.scale(c))
            .expect("scaling preserves well-definedness")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().module.is_zero_module()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().module.is_zero_module()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// The kernel as a canonical module with its inclusion.
    ///
    /// Elements `x` with `f(x) = 0` in the codomain form the lattice
    /// `L = {x : F·x ∈ span(codomain relations)}`, computed as the projection
    /// of the kernel of `[F | R_cod]`. The domain relations lie inside `L`
    /// (that is well-definedness), and expressing them in a basis of `L`
    /// presents the kernel module.
    pub fn kernel(&self) -> KernelParts<R> {
        let ring = self.ring().clone();
        let n_dom = self.domain.num_gens();
        let big = self.matrix.hstack(&self.codomain.presentation());
        let ker = crate::smith::kernel_basis(&big);
        let kx = ker.select_rows(&(0..n_dom).collect::<Vec<_>>());
        let basis = crate::smith::column_space_basis(&kx);
        let sb = smith(&basis);
        let rel = sb
            .solve_matrix(&self.domain.presentation())
            .expect("domain relations always lie in the kernel lattice");
        let c = canonicalize_presentation(&ring, basis.cols(), &rel);
        let inclusion = ModuleMap::new(
            c.module.clone(),
            self.domain.clone(),
            basis.mul(&c.from_canonical),
        )
        .expect("kernel inclusion is well defined");
        KernelParts { module: c.module, inclusion }
    }

    /// The image as a canonical module with `domain ↠ image ↪ codomain`,
    /// whose composite is the original map.
    pub fn image(&self) -> ImageParts<R> {
        let ring = self.ring().clone();
        let pres_cod = self.codomain.presentation();
        // The image corresponds to the lattice spanned by the map columns
        // together with the codomain relations; modding out the relations
        // presents it.
        let lattice = self.matrix.hstack(&pres_cod);
        let basis = crate::smith::column_space_basis(&lattice);
        let sb = smith(&basis);
        let rel = sb
            .solve_matrix(&pres_cod)
            .expect("codomain relations lie in the image lattice");
        let c = canonicalize_presentation(&ring, basis.cols(), &rel);
        let mono = ModuleMap::new(
            c.module.clone(),
            self.codomain.clone(),
            basis.mul(&c.from_canonical),
        )
        .expect("image inclusion is well defined");
        let coords = sb
            .solve_matrix(&self.matrix)
            .expect("map columns lie in the image lattice");
        let epi = ModuleMap::new(
            self.domain.clone(),
            c.module.clone(),
            c.to_canonical.mul(&coords),
        )
        .expect("corestriction to the image is well defined");
        debug_assert_eq!(
            mono.compose(&epi).unwrap(),
            *self,
            "image factorization must reproduce the map"
        );
        ImageParts { module: c.module, epi, mono }
    }

    /// The cokernel as a canonical module with its projection.
    pub fn cokernel(&self) -> CokernelParts<R> {
        let ring = self.ring().clone();
        let n_cod = self.codomain.num_gens();
        let pres = self.codomain.presentation().hstack(&self.matrix);
        let c = canonicalize_presentation(&ring, n_cod, &pres);
        let projection = ModuleMap::new(self.codomain.clone(), c.module.clone(), c.to_canonical)
            .expect("cokernel projection is well defined");
        debug_assert!(projection.compose(self).unwrap().is_zero_map());
        CokernelParts { module: c.module, projection }
    }

    /// Kernel of `λ·id − self` for an endomorphism.
    pub fn eigen_kernel(&self, lambda: &R::Elem) -> Result<FGModule<R>, LinalgError> {
        if self.domain != self.codomain {
            return Err(LinalgError::Incompatible(
                "eigenvalue analysis needs an endomorphism".to_string(),
            ));
        }
        let shifted = ModuleMap::scalar(&self.domain, lambda).sub(self)?;
        Ok(shifted.kernel().module)
    }
}

#[derive(Debug, Clone)]
pub struct KernelParts<R: Ring> {
    pub module: FGModule<R>,
    /// kernel → domain
    pub inclusion: ModuleMap<R>,
}

#[derive(Debug, Clone)]
pub struct ImageParts<R: Ring> {
    pub module: FGModule<R>,
    /// domain ↠ image
    pub epi: ModuleMap<R>,
    /// image ↪ codomain
    pub mono: ModuleMap<R>,
}

#[derive(Debug, Clone)]
pub struct CokernelParts<R: Ring> {
    pub module: FGModule<R>,
    /// codomain ↠ cokernel
    pub projection: ModuleMap<R>,
}

/// Kernel, image and cokernel of one map, computed together.
#[derive(Debug, Clone)]
pub struct MapFactorization<R: Ring> {
    pub kernel: KernelParts<R>,
    pub image: ImageParts<R>,
    pub cokernel: CokernelParts<R>,
}

pub fn map_factorization<R: Ring>(f: &ModuleMap<R>) -> MapFactorization<R> {
    MapFactorization {
        kernel: f.kernel(),
        image: f.image(),
        cokernel: f.cokernel(),
    }
}

/// A right inverse of a surjection as a raw coordinate matrix with
/// `epi.domain().num_gens()` rows and `epi.codomain().num_gens()` columns;
/// applying `epi` after the section is the identity.
pub fn section_of_epi<R: Ring>(epi: &ModuleMap<R>) -> Result<Mat<R>, LinalgError> {
    let ring = epi.ring().clone();
    let cod = epi.codomain();
    let sys = epi.matrix().hstack(&cod.presentation());
    let s = smith(&sys);
    let n_dom = epi.domain().num_gens();
    let mut cols = Vec::with_capacity(cod.num_gens());
    for i in 0..cod.num_gens() {
        let mut target = vec![ring.zero(); cod.num_gens()];
        target[i] = ring.one();
        let sol = s.solve(&target).ok_or_else(|| {
            LinalgError::Incompatible("section requested for a non-surjective map".to_string())
        })?;
        cols.push(sol[..n_dom].to_vec());
    }
    Ok(Mat::from_columns(&ring, n_dom, &cols))
}

/// Factor `g = mono ∘ h` through an injection: the corestriction of `g` to
/// the submodule `mono` embeds. Fails if the image of `g` does not lie in
/// that submodule.
pub fn factor_through_injection<R: Ring>(
    g: &ModuleMap<R>,
    mono: &ModuleMap<R>,
) -> Result<ModuleMap<R>, LinalgError> {
    if g.codomain() != mono.codomain() {
        return Err(LinalgError::Incompatible(
            "corestriction target mismatch".to_string(),
        ));
    }
    let ring = g.ring().clone();
    let sys = mono.matrix().hstack(&g.codomain().presentation());
    let s = smith(&sys);
    let nk = mono.domain().num_gens();
    let mut cols = Vec::with_capacity(g.domain().num_gens());
    for j in 0..g.domain().num_gens() {
        let sol = s.solve(&g.matrix().column(j)).ok_or_else(|| {
            LinalgError::Incompatible(
                "image does not lie in the submodule being corestricted to".to_string(),
            )
        })?;
        cols.push(sol[..nk].to_vec());
    }
    let h = ModuleMap::new(
        g.domain().clone(),
        mono.domain().clone(),
        Mat::from_columns(&ring, nk, &cols),
    )?;
    debug_assert_eq!(mono.compose(&h).unwrap(), *g);
    Ok(h)
}

/// Factor `g = h ∘ epi` through a surjection; requires (and verifies) that
/// `g` kills the kernel of `epi`.
pub fn factor_through_surjection<R: Ring>(
    g: &ModuleMap<R>,
    epi: &ModuleMap<R>,
) -> Result<ModuleMap<R>, LinalgError> {
    if g.domain() != epi.domain() {
        return Err(LinalgError::Incompatible(
            "descent source mismatch".to_string(),
        ));
    }
    let section = section_of_epi(epi)?;
    let h = ModuleMap::new(
        epi.codomain().clone(),
        g.codomain().clone(),
        g.matrix().mul(&section),
    )?;
    // The construction is only legitimate when g factors; verify, don't trust.
    let back = h.compose(epi)?;
    if back != *g {
        return Err(LinalgError::Incompatible(
            "map does not kill the kernel of the surjection, so it cannot descend".to_string(),
        ));
    }
    Ok(h)
}

/// Whether the composable pair `(f, g)` is exact at the middle object:
/// `g ∘ f = 0` and every kernel generator of `g` lies in the image of `f`.
pub fn is_exact_at<R: Ring>(f: &ModuleMap<R>, g: &ModuleMap<R>) -> Result<bool, LinalgError> {
    if f.codomain() != g.domain() {
        return Err(LinalgError::Incompatible(
            "exactness check on a non-composable pair".to_string(),
        ));
    }
    if !g.compose(f)?.is_zero_map() {
        return Ok(false);
    }
    let ker = g.kernel();
    let sys = f.matrix().hstack(&f.codomain().presentation());
    let s = smith(&sys);
    for j in 0..ker.inclusion.matrix().cols() {
        if s.solve(&ker.inclusion.matrix().column(j)).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exactness at every interior junction of a sequence of composable maps.
pub fn exactness_check<R: Ring>(seq: &[ModuleMap<R>]) -> Result<Vec<bool>, LinalgError> {
    for w in seq.windows(2) {
        if w[0].codomain() != w[1].domain() {
            return Err(LinalgError::Incompatible(format!(
                "sequence breaks: {} feeds {}",
                w[0].codomain().describe(),
                w[1].domain().describe()
            )));
        }
    }
    let mut out = Vec::new();
    for w in seq.windows(2) {
        out.push(is_exact_at(&w[0], &w[1])?);
    }
    Ok(out)
}

/// A direct sum together with its inclusion and projection maps. Over ℤ the
/// summed module is re-canonicalized (invariant factors merge), so the
/// inclusions are genuine coordinate changes rather than block selectors.
#[derive(Debug, Clone)]
pub struct DirectSumParts<R: Ring> {
    pub module: FGModule<R>,
    pub inclusions: Vec<ModuleMap<R>>,
    pub projections: Vec<ModuleMap<R>>,
}

pub fn direct_sum_parts<R: Ring>(parts: &[&FGModule<R>]) -> DirectSumParts<R> {
    assert!(!parts.is_empty(), "direct sum needs at least one part");
    let ring = parts[0].ring().clone();
    let total: usize = parts.iter().map(|m| m.num_gens()).sum();
    let mut pres = parts[0].presentation();
    for m in &parts[1..] {
        pres = pres.block_diag(&m.presentation());
    }
    let c = canonicalize_presentation(&ring, total, &pres);
    let mut inclusions = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    let mut offset = 0;
    for m in parts {
        let n = m.num_gens();
        let cols: Vec<usize> = (offset..offset + n).collect();
        let inc = ModuleMap::new(
            (*m).clone(),
            c.module.clone(),
            c.to_canonical.select_columns(&cols),
        )
        .expect("direct-sum inclusion is well defined");
        let proj = ModuleMap::new(
            c.module.clone(),
            (*m).clone(),
            c.from_canonical.select_rows(&cols),
        )
        .expect("direct-sum projection is well defined");
        inclusions.push(inc);
        projections.push(proj);
        offset += n;
    }
    DirectSumParts { module: c.module, inclusions, projections }
}

/// The block map `⊕fᵢ : ⊕domᵢ → ⊕codᵢ` through given sum decompositions.
pub fn direct_sum_of_maps<R: Ring>(
    sum_dom: &DirectSumParts<R>,
    sum_cod: &DirectSumParts<R>,
    maps: &[&ModuleMap<R>],
) -> ModuleMap<R> {
    assert_eq!(maps.len(), sum_dom.projections.len());
    assert_eq!(maps.len(), sum_cod.inclusions.len());
    let mut acc = ModuleMap::zero_map(sum_dom.module.clone(), sum_cod.module.clone());
    for (k, f) in maps.iter().enumerate() {
        let piece = sum_cod.inclusions[k]
            .compose(f)
            .and_then(|m| m.compose(&sum_dom.projections[k]))
            .expect("block structure is composable");
        acc = acc.add(&piece).expect("blocks share (co)domain");
    }
    acc
}
