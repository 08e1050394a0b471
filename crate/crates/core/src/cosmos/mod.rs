//! Exactly computable monoidal base categories.
//!
//! Three instances share one representation. An object is a list of cyclic
//! pieces, each carrying an order: finite sets use order 0 for every point,
//! F_p-vector spaces use `p` for every basis vector, and finitely generated
//! abelian groups use arbitrary orders (0 for Z). The tensor product is the
//! Kronecker product of piece lists (orders combine by gcd), so it is strictly
//! associative with unit the single piece `[0]` or `[p]`; coproducts are
//! concatenations. Morphisms are sparse column-major integer matrices; for
//! finite sets every column has exactly one entry equal to 1.

pub mod fp;
pub mod json;
pub mod sets;
pub mod zmod;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_integer::Integer;

use crate::error::{Error, Result};

const MODULE: &str = "cosmos";

/// Default cap on explicit element enumeration.
pub const ELEMENT_BUDGET: u128 = 1 << 20;

/// A sparse vector: sorted `(index, coefficient)` pairs with nonzero entries.
pub type Elt = Vec<(u32, i64)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cosmos {
    FinSet,
    FinVect { p: u64 },
    FgAb,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VObj {
    orders: Arc<[u64]>,
}

impl fmt::Debug for VObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VObj{:?}", &self.orders[..])
    }
}

impl VObj {
    pub fn from_orders(orders: Vec<u64>) -> Self {
        VObj { orders: orders.into() }
    }

    pub fn empty() -> Self {
        VObj::from_orders(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self, i: usize) -> u64 {
        self.orders[i]
    }

    /// True if every piece has order 1 (the zero group).
    pub fn is_trivial_group(&self) -> bool {
        self.orders.iter().all(|&o| o == 1)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VMor {
    src: VObj,
    dst: VObj,
    ptr: Vec<u32>,
    ent: Vec<(u32, i64)>,
}

impl fmt::Debug for VMor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols: Vec<&[(u32, i64)]> = (0..self.src.len()).map(|j| self.col(j)).collect();
        write!(f, "VMor({:?} -> {:?}, {:?})", self.src, self.dst, cols)
    }
}

pub(crate) fn red(order: u64, x: i128) -> i64 {
    let v = if order == 0 { x } else { x.rem_euclid(order as i128) };
    i64::try_from(v).expect("coefficient overflow")
}

fn normalize_col(dst: &VObj, mut col: Vec<(u32, i64)>) -> Vec<(u32, i64)> {
    col.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(u32, i64)> = Vec::with_capacity(col.len());
    for (i, c) in col {
        match out.last_mut() {
            Some(last) if last.0 == i => {
                last.1 = red(dst.order(i as usize), last.1 as i128 + c as i128)
            }
            _ => out.push((i, red(dst.order(i as usize), c as i128))),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

impl VMor {
    /// Builds a morphism from columns, normalizing coefficients. No
    /// well-definedness check; use [`Cosmos::mor`] for validated input.
    pub fn from_cols(src: VObj, dst: VObj, cols: impl IntoIterator<Item = Elt>) -> Self {
        let mut ptr = vec![0u32];
        let mut ent = Vec::new();
        for col in cols {
            for e in &col {
                assert!((e.0 as usize) < dst.len(), "row index out of range");
            }
            ent.extend(normalize_col(&dst, col));
            ptr.push(ent.len() as u32);
        }
        assert_eq!(ptr.len(), src.len() + 1, "column count mismatch");
        VMor { src, dst, ptr, ent }
    }

    /// The basis map sending generator `j` to generator `table[j]`.
    pub fn from_table(src: VObj, dst: VObj, table: &[usize]) -> Self {
        let cols: Vec<Elt> = table.iter().map(|&t| vec![(t as u32, 1)]).collect();
        VMor::from_cols(src, dst, cols)
    }

    /// Builds a morphism from a dense row-major matrix.
    pub fn from_dense(src: VObj, dst: VObj, rows: &[Vec<i64>]) -> Self {
        let cols: Vec<Elt> = (0..src.len())
            .map(|j| {
                (0..dst.len())
                    .filter(|&i| rows[i][j] != 0)
                    .map(|i| (i as u32, rows[i][j]))
                    .collect()
            })
            .collect();
        VMor::from_cols(src, dst, cols)
    }

    pub fn src(&self) -> &VObj {
        &self.src
    }

    pub fn dst(&self) -> &VObj {
        &self.dst
    }

    pub fn col(&self, j: usize) -> &[(u32, i64)] {
        &self.ent[self.ptr[j] as usize..self.ptr[j + 1] as usize]
    }

    pub fn nnz(&self) -> usize {
        self.ent.len()
    }

    /// The function table, if every column is a single unit entry.
    pub fn table(&self) -> Option<Vec<usize>> {
        (0..self.src.len())
            .map(|j| match self.col(j) {
                [(i, 1)] => Some(*i as usize),
                _ => None,
            })
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.src.len()]; self.dst.len()];
        for j in 0..self.src.len() {
            for &(i, c) in self.col(j) {
                m[i as usize][j] = c;
            }
        }
        m
    }

    fn to_fp(&self) -> fp::Mat {
        let mut m = fp::zeros(self.dst.len(), self.src.len());
        for j in 0..self.src.len() {
            for &(i, c) in self.col(j) {
                m[i as usize][j] = c as u64;
            }
        }
        m
    }

    fn to_z(&self) -> zmod::IMat {
        let mut m = zmod::zeros(self.dst.len(), self.src.len());
        for j in 0..self.src.len() {
            for &(i, c) in self.col(j) {
                m[i as usize][j] = c as i128;
            }
        }
        m
    }

    /// Same matrix with new endpoints of equal sizes.
    pub fn retype(&self, src: VObj, dst: VObj) -> VMor {
        assert_eq!(src.len(), self.src.len());
        assert_eq!(dst.len(), self.dst.len());
        let cols: Vec<Elt> = (0..src.len()).map(|j| self.col(j).to_vec()).collect();
        VMor::from_cols(src, dst, cols)
    }
}

/// One equation `f ∘ π_left = g ∘ π_right` in a finite limit.
#[derive(Clone, Debug)]
pub struct LimEq {
    pub left: usize,
    pub f: VMor,
    pub right: usize,
    pub g: VMor,
}

#[derive(Clone, Debug)]
enum LimitData {
    Set(HashMap<Vec<u32>, u32>),
    Vect(fp::Solver),
    Ab(zmod::ZSolver),
}

/// A finite limit `L → ∏ factors` cut out by equations, with projections.
#[derive(Clone, Debug)]
pub struct Limit {
    cosmos: Cosmos,
    pub obj: VObj,
    pub proj: Vec<VMor>,
    factors: Vec<VObj>,
    data: LimitData,
}

impl Limit {
    /// Mediating morphism `Z → L` for a cone with the given legs.
    pub fn mediate(&self, legs: &[VMor]) -> Result<VMor> {
        if legs.len() != self.factors.len() {
            return Err(Error::mismatch(MODULE, "mediate", "wrong number of legs"));
        }
        let z = match legs.first() {
            Some(l) => l.src().clone(),
            None => {
                return Err(Error::invalid(MODULE, "mediate", "limit with no factors has no cone data"));
            }
        };
        for (l, o) in legs.iter().zip(&self.factors) {
            if l.src() != &z || l.dst() != o {
                return Err(Error::mismatch(MODULE, "mediate", "leg endpoints do not match"));
            }
        }
        let cols: Result<Vec<Elt>> = (0..z.len())
            .map(|j| {
                let comps: Vec<Elt> = legs.iter().map(|l| l.col(j).to_vec()).collect();
                self.element(&comps)
            })
            .collect();
        Ok(VMor::from_cols(z, self.obj.clone(), cols?))
    }

    /// The element of L with the given components, if it exists.
    pub fn element(&self, comps: &[Elt]) -> Result<Elt> {
        let fail = || Error::mismatch(MODULE, "mediate", "components do not satisfy the limit equations");
        match &self.data {
            LimitData::Set(index) => {
                let key: Option<Vec<u32>> = comps
                    .iter()
                    .map(|c| match c.as_slice() {
                        [(i, 1)] => Some(*i),
                        _ => None,
                    })
                    .collect();
                let key = key.ok_or_else(fail)?;
                index.get(&key).map(|&i| vec![(i, 1)]).ok_or_else(fail)
            }
            LimitData::Vect(solver) => {
                let mut b = Vec::new();
                for (c, o) in comps.iter().zip(&self.factors) {
                    let mut v = vec![0u64; o.len()];
                    for &(i, x) in c {
                        v[i as usize] = x as u64;
                    }
                    b.extend(v);
                }
                let x = solver.solve(&b).ok_or_else(fail)?;
                Ok(x.iter()
                    .enumerate()
                    .filter(|(_, &v)| v != 0)
                    .map(|(i, &v)| (i as u32, v as i64))
                    .collect())
            }
            LimitData::Ab(solver) => {
                let mut b = Vec::new();
                for (c, o) in comps.iter().zip(&self.factors) {
                    let mut v = vec![0i128; o.len()];
                    for &(i, x) in c {
                        v[i as usize] = x as i128;
                    }
                    b.extend(v);
                }
                let x = solver.solve(&b).ok_or_else(fail)?;
                Ok(normalize_col(
                    &self.obj,
                    x.iter()
                        .enumerate()
                        .filter(|(_, &v)| v != 0)
                        .map(|(i, &v)| (i as u32, v as i64))
                        .collect(),
                ))
            }
        }
    }

    pub fn cosmos(&self) -> Cosmos {
        self.cosmos
    }
}

/// A coequalizer `q: B → Q` with lifts of the generators of `Q`.
#[derive(Clone, Debug)]
pub struct Coeq {
    cosmos: Cosmos,
    pub obj: VObj,
    pub q: VMor,
    pub lifts: Vec<Elt>,
}

impl Coeq {
    /// The unique `m: Q → Y` with `m ∘ q = h`, if `h` coequalizes the pairs.
    pub fn mediate(&self, h: &VMor) -> Result<VMor> {
        if h.src() != self.q.src() {
            return Err(Error::mismatch(MODULE, "coeq_mediate", "map does not start at the coequalized object"));
        }
        let c = self.cosmos;
        let cols: Vec<Elt> = self.lifts.iter().map(|l| c.apply(h, l)).collect();
        let m = VMor::from_cols(self.obj.clone(), h.dst().clone(), cols);
        c.check_mor(&m)
            .map_err(|_| Error::mismatch(MODULE, "coeq_mediate", "map does not coequalize"))?;
        if c.compose(&self.q, &m)? != *h {
            return Err(Error::mismatch(MODULE, "coeq_mediate", "map does not coequalize"));
        }
        Ok(m)
    }
}

/// A direct complement `N` of a mono `m: A → B` with `[m, incl]: A ⊕ N ≅ B`.
#[derive(Clone, Debug)]
pub struct Complement {
    pub obj: VObj,
    pub incl: VMor,
    pub iso: VMor,
}

/// Runtime-checkable instance properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Capabilities {
    pub u_faithful: bool,
    pub u_preserves_reflexive_coequalizers: bool,
    pub u_reflects_reflexive_coequalizers: bool,
    pub additive: bool,
    /// Whether the instance is certified to satisfy every cosmos axiom.
    pub cosmos_axioms_certified: bool,
}

/// Isomorphism invariant of an object.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IsoClass {
    Size(usize),
    Dim(usize),
    Group { free: usize, torsion: Vec<u64> },
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

impl Cosmos {
    pub fn finvect(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::invalid(MODULE, "finvect", format!("{p} is not prime")));
        }
        Ok(Cosmos::FinVect { p })
    }

    pub fn name(&self) -> String {
        match self {
            Cosmos::FinSet => "finset".into(),
            Cosmos::FinVect { p } => format!("fvect{p}"),
            Cosmos::FgAb => "fgab".into(),
        }
    }

    pub fn is_additive(&self) -> bool {
        !matches!(self, Cosmos::FinSet)
    }

    pub fn capabilities(&self) -> Capabilities {
        Capabilities {
            u_faithful: true,
            u_preserves_reflexive_coequalizers: true,
            u_reflects_reflexive_coequalizers: true,
            additive: self.is_additive(),
            cosmos_axioms_certified: !matches!(self, Cosmos::FgAb),
        }
    }

    fn piece(&self) -> u64 {
        match self {
            Cosmos::FinVect { p } => *p,
            _ => 0,
        }
    }

    pub fn unit(&self) -> VObj {
        VObj::from_orders(vec![self.piece()])
    }

    /// `F(S)`: the coproduct of `n` copies of the unit.
    pub fn free(&self, n: usize) -> VObj {
        VObj::from_orders(vec![self.piece(); n])
    }

    pub fn initial(&self) -> VObj {
        VObj::empty()
    }

    /// An abelian group from cyclic orders (0 for Z).
    pub fn cyclic(&self, orders: &[u64]) -> Result<VObj> {
        if *self != Cosmos::FgAb {
            return Err(Error::mismatch(MODULE, "cyclic", "cyclic groups exist only in fgab"));
        }
        Ok(VObj::from_orders(orders.to_vec()))
    }

    /// `Z^free ⊕ Z/d_1 ⊕ …` for `fgab`.
    pub fn fgab(&self, free: usize, torsion: &[u64]) -> Result<VObj> {
        if torsion.iter().any(|&d| d < 2) {
            return Err(Error::invalid(MODULE, "fgab", "torsion orders must exceed 1"));
        }
        let mut o = vec![0; free];
        o.extend_from_slice(torsion);
        self.cyclic(&o)
    }

    pub fn check_obj(&self, a: &VObj) -> Result<()> {
        let ok = match self {
            Cosmos::FinSet => a.orders().iter().all(|&o| o == 0),
            Cosmos::FinVect { p } => a.orders().iter().all(|o| o == p),
            Cosmos::FgAb => true,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::mismatch(MODULE, "check_obj", format!("object not in {}", self.name())))
        }
    }

    pub fn check_mor(&self, f: &VMor) -> Result<()> {
        self.check_obj(f.src())?;
        self.check_obj(f.dst())?;
        match self {
            Cosmos::FinSet => {
                if f.table().is_none() {
                    return Err(Error::invalid(MODULE, "check_mor", "finite-set map must send each point to one point"));
                }
            }
            Cosmos::FinVect { .. } => {}
            Cosmos::FgAb => {
                for j in 0..f.src().len() {
                    let dj = f.src().order(j) as i128;
                    for &(i, c) in f.col(j) {
                        let bi = f.dst().order(i as usize);
                        if red(bi, dj * c as i128) != 0 {
                            return Err(Error::invalid(
                                MODULE,
                                "check_mor",
                                format!("generator {j} of order {dj} cannot map to {c} times generator {i} of order {bi}"),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Validated morphism from columns.
    pub fn mor(&self, src: VObj, dst: VObj, cols: Vec<Elt>) -> Result<VMor> {
        if cols.len() != src.len() || cols.iter().flatten().any(|e| e.0 as usize >= dst.len()) {
            return Err(Error::invalid(MODULE, "mor", "matrix shape does not match endpoints"));
        }
        let f = VMor::from_cols(src, dst, cols);
        self.check_mor(&f)?;
        Ok(f)
    }

    pub fn id(&self, a: &VObj) -> VMor {
        let t: Vec<usize> = (0..a.len()).collect();
        VMor::from_table(a.clone(), a.clone(), &t)
    }

    /// `g ∘ f`.
    pub fn compose(&self, f: &VMor, g: &VMor) -> Result<VMor> {
        if f.dst() != g.src() {
            return Err(Error::mismatch(
                MODULE,
                "compose",
                format!("codomain {:?} differs from domain {:?}", f.dst(), g.src()),
            ));
        }
        let n = g.dst().len();
        let mut acc = vec![0i128; n];
        let mut touched: Vec<u32> = Vec::new();
        let mut cols = Vec::with_capacity(f.src().len());
        for j in 0..f.src().len() {
            for &(k, a) in f.col(j) {
                for &(i, b) in g.col(k as usize) {
                    if acc[i as usize] == 0 {
                        touched.push(i);
                    }
                    acc[i as usize] += a as i128 * b as i128;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut col = Vec::with_capacity(touched.len());
            for &i in &touched {
                let v = red(g.dst().order(i as usize), acc[i as usize]);
                if v != 0 {
                    col.push((i, v));
                }
                acc[i as usize] = 0;
            }
            touched.clear();
            cols.push(col);
        }
        Ok(VMor::from_cols(f.src().clone(), g.dst().clone(), cols))
    }

    /// Composite of a chain `f_1, f_2, …` applied left to right.
    pub fn compose_all(&self, maps: &[&VMor]) -> Result<VMor> {
        let mut it = maps.iter();
        let first = it
            .next()
            .ok_or_else(|| Error::invalid(MODULE, "compose_all", "empty chain"))?;
        let mut acc = (*first).clone();
        for m in it {
            acc = self.compose(&acc, m)?;
        }
        Ok(acc)
    }

    pub fn tensor(&self, a: &VObj, b: &VObj) -> VObj {
        let mut o = Vec::with_capacity(a.len() * b.len());
        for &x in a.orders() {
            for &y in b.orders() {
                o.push(x.gcd(&y));
            }
        }
        VObj::from_orders(o)
    }

    pub fn tensor_many(&self, objs: &[&VObj]) -> VObj {
        objs.iter().fold(self.unit(), |acc, o| self.tensor(&acc, o))
    }

    pub fn tensor_mor(&self, f: &VMor, g: &VMor) -> VMor {
        let src = self.tensor(f.src(), g.src());
        let dst = self.tensor(f.dst(), g.dst());
        let nb = g.dst().len() as u32;
        let mut cols = Vec::with_capacity(src.len());
        for a in 0..f.src().len() {
            for c in 0..g.src().len() {
                let mut col = Vec::new();
                for &(b, x) in f.col(a) {
                    for &(d, y) in g.col(c) {
                        col.push((b * nb + d, x * y));
                    }
                }
                cols.push(col);
            }
        }
        VMor::from_cols(src, dst, cols)
    }

    /// `x ⊗ y` as an element of `a ⊗ b`.
    pub fn tensor_elt(&self, a: &VObj, b: &VObj, x: &Elt, y: &Elt) -> Elt {
        let ab = self.tensor(a, b);
        let nb = b.len() as u32;
        let mut out = Vec::with_capacity(x.len() * y.len());
        for &(i, u) in x {
            for &(j, v) in y {
                out.push((i * nb + j, u * v));
            }
        }
        normalize_col(&ab, out)
    }

    pub fn coproduct(&self, objs: &[VObj]) -> (VObj, Vec<VMor>) {
        let sum = Self::sum_obj(objs);
        let mut off = 0;
        let mut inj = Vec::with_capacity(objs.len());
        for o in objs {
            let t: Vec<usize> = (off..off + o.len()).collect();
            inj.push(VMor::from_table(o.clone(), sum.clone(), &t));
            off += o.len();
        }
        (sum, inj)
    }

    pub fn sum_obj(objs: &[VObj]) -> VObj {
        VObj::from_orders(objs.iter().flat_map(|o| o.orders().iter().copied()).collect())
    }

    /// `[f_1, …, f_k]: A_1 ⊕ … ⊕ A_k → B`.
    pub fn copair(&self, maps: &[VMor], dst: &VObj) -> Result<VMor> {
        let mut cols = Vec::new();
        let mut srcs = Vec::new();
        for m in maps {
            if m.dst() != dst {
                return Err(Error::mismatch(MODULE, "copair", "maps have different codomains"));
            }
            srcs.push(m.src().clone());
            for j in 0..m.src().len() {
                cols.push(m.col(j).to_vec());
            }
        }
        Ok(VMor::from_cols(Self::sum_obj(&srcs), dst.clone(), cols))
    }

    /// Block-diagonal `f_1 ⊕ … ⊕ f_k`.
    pub fn sum_mor(&self, maps: &[VMor]) -> VMor {
        let srcs: Vec<VObj> = maps.iter().map(|m| m.src().clone()).collect();
        let dsts: Vec<VObj> = maps.iter().map(|m| m.dst().clone()).collect();
        let mut cols = Vec::new();
        let mut off = 0u32;
        for m in maps {
            for j in 0..m.src().len() {
                cols.push(m.col(j).iter().map(|&(i, c)| (i + off, c)).collect());
            }
            off += m.dst().len() as u32;
        }
        VMor::from_cols(Self::sum_obj(&srcs), Self::sum_obj(&dsts), cols)
    }

    pub fn zero_mor(&self, a: &VObj, b: &VObj) -> Result<VMor> {
        if !self.is_additive() && !a.is_empty() {
            return Err(Error::capability(MODULE, "zero_mor", "no zero map out of a nonempty set"));
        }
        Ok(VMor::from_cols(a.clone(), b.clone(), vec![Vec::new(); a.len()]))
    }

    fn require_additive(&self, op: &'static str) -> Result<()> {
        if self.is_additive() {
            Ok(())
        } else {
            Err(Error::capability(MODULE, op, "finite sets are not additive"))
        }
    }

    pub fn add(&self, f: &VMor, g: &VMor) -> Result<VMor> {
        self.require_additive("add")?;
        if f.src() != g.src() || f.dst() != g.dst() {
            return Err(Error::mismatch(MODULE, "add", "endpoints differ"));
        }
        let cols: Vec<Elt> = (0..f.src().len())
            .map(|j| f.col(j).iter().chain(g.col(j)).copied().collect())
            .collect();
        Ok(VMor::from_cols(f.src().clone(), f.dst().clone(), cols))
    }

    pub fn scale(&self, f: &VMor, k: i64) -> Result<VMor> {
        self.require_additive("scale")?;
        let cols: Vec<Elt> = (0..f.src().len())
            .map(|j| f.col(j).iter().map(|&(i, c)| (i, c * k)).collect())
            .collect();
        Ok(VMor::from_cols(f.src().clone(), f.dst().clone(), cols))
    }

    pub fn sub(&self, f: &VMor, g: &VMor) -> Result<VMor> {
        self.add(f, &self.scale(g, -1)?)
    }

    pub fn apply(&self, f: &VMor, x: &Elt) -> Elt {
        let mut out = Vec::new();
        for &(j, a) in x {
            for &(i, b) in f.col(j as usize) {
                out.push((i, red(0, a as i128 * b as i128)));
            }
        }
        normalize_col(f.dst(), out)
    }

    pub fn normalize_elt(&self, a: &VObj, x: Elt) -> Elt {
        normalize_col(a, x)
    }

    pub fn add_elt(&self, a: &VObj, x: &Elt, y: &Elt) -> Elt {
        normalize_col(a, x.iter().chain(y).copied().collect())
    }

    pub fn scale_elt(&self, a: &VObj, x: &Elt, k: i64) -> Elt {
        normalize_col(a, x.iter().map(|&(i, c)| (i, c * k)).collect())
    }

    /// The generator `i` as an element.
    pub fn basis_elt(i: usize) -> Elt {
        vec![(i as u32, 1)]
    }

    /// The point `I → A` picking out `x`.
    pub fn point(&self, a: &VObj, x: &Elt) -> VMor {
        VMor::from_cols(self.unit(), a.clone(), vec![x.clone()])
    }

    /// Number of `I`-points, if finite.
    pub fn point_count(&self, a: &VObj) -> Option<u128> {
        match self {
            Cosmos::FinSet => Some(a.len() as u128),
            Cosmos::FinVect { p } => (*p as u128).checked_pow(a.len() as u32),
            Cosmos::FgAb => a
                .orders()
                .iter()
                .try_fold(1u128, |acc, &o| if o == 0 { None } else { acc.checked_mul(o as u128) }),
        }
    }

    /// All elements of `U(A)`, in lexicographic order of coordinates.
    pub fn u_elements(&self, a: &VObj) -> Result<Vec<Elt>> {
        self.u_elements_within(a, ELEMENT_BUDGET)
    }

    pub fn u_elements_within(&self, a: &VObj, budget: u128) -> Result<Vec<Elt>> {
        if *self == Cosmos::FinSet {
            return Ok((0..a.len()).map(Self::basis_elt).collect());
        }
        let count = self.point_count(a).ok_or_else(|| {
            Error::capability(MODULE, "u_elements", "object has infinitely many points")
        })?;
        if count > budget {
            return Err(Error::budget(
                MODULE,
                "u_elements",
                format!("{count} points exceed the enumeration budget {budget}"),
            ));
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut coords = vec![0u64; a.len()];
        loop {
            out.push(
                coords
                    .iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .map(|(i, &c)| (i as u32, c as i64))
                    .collect(),
            );
            // odometer, last coordinate fastest
            let mut k = a.len();
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                coords[k] += 1;
                if coords[k] < a.order(k) {
                    break;
                }
                coords[k] = 0;
            }
        }
    }

    pub fn u_injective(&self, f: &VMor) -> bool {
        match self {
            Cosmos::FinSet => {
                let t = f.table().expect("finite-set map");
                let mut seen = vec![false; f.dst().len()];
                t.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
            }
            Cosmos::FinVect { p } => fp::rank(&f.to_fp(), f.src().len(), *p) == f.src().len(),
            Cosmos::FgAb => zmod::kernel(&f.to_z(), f.src().orders(), f.dst().orders()).0.is_empty(),
        }
    }

    pub fn u_surjective(&self, f: &VMor) -> bool {
        match self {
            Cosmos::FinSet => {
                let t = f.table().expect("finite-set map");
                let mut seen = vec![false; f.dst().len()];
                for i in t {
                    seen[i] = true;
                }
                seen.into_iter().all(|b| b)
            }
            Cosmos::FinVect { p } => fp::rank(&f.to_fp(), f.src().len(), *p) == f.dst().len(),
            Cosmos::FgAb => zmod::cokernel(&f.to_z(), f.src().len(), f.dst().orders()).0.is_empty(),
        }
    }

    pub fn is_mono(&self, f: &VMor) -> bool {
        self.u_injective(f)
    }

    pub fn is_iso(&self, f: &VMor) -> bool {
        match self {
            Cosmos::FinVect { .. } if f.src().len() != f.dst().len() => false,
            Cosmos::FinSet if f.src().len() != f.dst().len() => false,
            _ => self.u_injective(f) && self.u_surjective(f),
        }
    }

    pub fn inverse(&self, f: &VMor) -> Result<VMor> {
        if !self.is_iso(f) {
            return Err(Error::invalid(MODULE, "inverse", "morphism is not invertible"));
        }
        let b = f.dst().clone();
        let a = f.src().clone();
        let cols: Vec<Elt> = match self {
            Cosmos::FinSet => {
                let t = f.table().unwrap();
                let mut inv = vec![0; t.len()];
                for (j, &i) in t.iter().enumerate() {
                    inv[i] = j;
                }
                return Ok(VMor::from_table(b, a, &inv));
            }
            Cosmos::FinVect { p } => {
                let s = fp::Solver::new(&f.to_fp(), a.len(), *p);
                (0..b.len())
                    .map(|i| {
                        let mut e = vec![0; b.len()];
                        e[i] = 1;
                        let x = s.solve(&e).expect("invertible");
                        x.iter()
                            .enumerate()
                            .map(|(k, &v)| (k as u32, v as i64))
                            .collect()
                    })
                    .collect()
            }
            Cosmos::FgAb => {
                let s = zmod::ZSolver::new(&f.to_z(), a.orders(), b.orders());
                (0..b.len())
                    .map(|i| {
                        let mut e = vec![0; b.len()];
                        e[i] = 1;
                        let x = s.solve(&e).expect("invertible");
                        x.iter()
                            .enumerate()
                            .map(|(k, &v)| (k as u32, v as i64))
                            .collect()
                    })
                    .collect()
            }
        };
        Ok(VMor::from_cols(b, a, cols))
    }

    /// Some `x` with `f(x) = y`, if one exists.
    pub fn preimage(&self, f: &VMor, y: &Elt) -> Option<Elt> {
        let n = f.dst().len();
        match self {
            Cosmos::FinSet => {
                let target = match y.as_slice() {
                    [(i, 1)] => *i as usize,
                    _ => return None,
                };
                let t = f.table().expect("finite-set map");
                t.iter().position(|&i| i == target).map(Self::basis_elt)
            }
            Cosmos::FinVect { p } => {
                let mut b = vec![0u64; n];
                for &(i, v) in y {
                    b[i as usize] = v.rem_euclid(*p as i64) as u64;
                }
                let x = fp::Solver::new(&f.to_fp(), f.src().len(), *p).solve(&b)?;
                Some(
                    x.iter()
                        .enumerate()
                        .filter(|(_, &v)| v != 0)
                        .map(|(k, &v)| (k as u32, v as i64))
                        .collect(),
                )
            }
            Cosmos::FgAb => {
                let mut b = vec![0i128; n];
                for &(i, v) in y {
                    b[i as usize] = v as i128;
                }
                let x = zmod::ZSolver::new(&f.to_z(), f.src().orders(), f.dst().orders()).solve(&b)?;
                Some(normalize_col(
                    f.src(),
                    x.iter()
                        .enumerate()
                        .filter(|(_, &v)| v != 0)
                        .map(|(k, &v)| (k as u32, v as i64))
                        .collect(),
                ))
            }
        }
    }

    /// True for the initial object (empty set, zero space, trivial group).
    pub fn is_zero(&self, a: &VObj) -> bool {
        a.is_empty() || (*self == Cosmos::FgAb && a.is_trivial_group())
    }

    pub fn iso_class(&self, a: &VObj) -> IsoClass {
        match self {
            Cosmos::FinSet => IsoClass::Size(a.len()),
            Cosmos::FinVect { .. } => IsoClass::Dim(a.len()),
            Cosmos::FgAb => {
                let (free, torsion) = zmod::invariants(a.orders());
                IsoClass::Group { free, torsion }
            }
        }
    }

    pub fn isomorphic(&self, a: &VObj, b: &VObj) -> bool {
        self.iso_class(a) == self.iso_class(b)
    }

    /// The limit of the factors subject to the equations.
    pub fn limit(&self, factors: &[VObj], eqs: &[LimEq]) -> Result<Limit> {
        for e in eqs {
            if e.left >= factors.len() || e.right >= factors.len() {
                return Err(Error::invalid(MODULE, "limit", "equation refers to a missing factor"));
            }
            if e.f.src() != &factors[e.left] || e.g.src() != &factors[e.right] || e.f.dst() != e.g.dst() {
                return Err(Error::mismatch(MODULE, "limit", "ill-typed equation"));
            }
        }
        match self {
            Cosmos::FinSet => {
                let tables: Vec<(Vec<usize>, Vec<usize>)> = eqs
                    .iter()
                    .map(|e| (e.f.table().unwrap(), e.g.table().unwrap()))
                    .collect();
                let seqs: Vec<sets::SetEq<'_>> = eqs
                    .iter()
                    .zip(&tables)
                    .map(|(e, (f, g))| sets::SetEq { left: e.left, f, right: e.right, g })
                    .collect();
                let sizes: Vec<usize> = factors.iter().map(|o| o.len()).collect();
                let tuples = sets::join(&sizes, &seqs);
                let obj = self.free(tuples.len());
                let proj = factors
                    .iter()
                    .enumerate()
                    .map(|(k, o)| {
                        let t: Vec<usize> = tuples.iter().map(|tu| tu[k] as usize).collect();
                        VMor::from_table(obj.clone(), o.clone(), &t)
                    })
                    .collect();
                let index = tuples
                    .into_iter()
                    .enumerate()
                    .map(|(i, t)| (t, i as u32))
                    .collect();
                Ok(Limit {
                    cosmos: *self,
                    obj,
                    proj,
                    factors: factors.to_vec(),
                    data: LimitData::Set(index),
                })
            }
            _ => self.linear_limit(factors, eqs),
        }
    }

    fn linear_limit(&self, factors: &[VObj], eqs: &[LimEq]) -> Result<Limit> {
        let offsets: Vec<usize> = factors
            .iter()
            .scan(0, |acc, o| {
                let s = *acc;
                *acc += o.len();
                Some(s)
            })
            .collect();
        let total: usize = factors.iter().map(|o| o.len()).sum();
        let prod = Self::sum_obj(factors);
        // stacked differences f π_l − g π_r
        let mut rows_orders = Vec::new();
        let mut diff: Vec<Elt> = vec![Vec::new(); total];
        for e in eqs {
            let base = rows_orders.len() as u32;
            rows_orders.extend_from_slice(e.f.dst().orders());
            for j in 0..e.f.src().len() {
                for &(i, c) in e.f.col(j) {
                    diff[offsets[e.left] + j].push((base + i, c));
                }
            }
            for j in 0..e.g.src().len() {
                for &(i, c) in e.g.col(j) {
                    diff[offsets[e.right] + j].push((base + i, -c));
                }
            }
        }
        let target = VObj::from_orders(rows_orders);
        let dmap = VMor::from_cols(prod.clone(), target.clone(), diff);
        let (obj, incl) = match self {
            Cosmos::FinVect { p } => {
                let basis = fp::kernel(&dmap.to_fp(), total, *p);
                let k = if total == 0 { 0 } else { basis[0].len() };
                let obj = self.free(k);
                let cols: Vec<Elt> = (0..k)
                    .map(|c| {
                        (0..total)
                            .filter(|&r| basis[r][c] != 0)
                            .map(|r| (r as u32, basis[r][c] as i64))
                            .collect()
                    })
                    .collect();
                (obj.clone(), VMor::from_cols(obj, prod.clone(), cols))
            }
            Cosmos::FgAb => {
                let (orders, m) = zmod::kernel(&dmap.to_z(), prod.orders(), target.orders());
                let k = orders.len();
                let obj = VObj::from_orders(orders);
                let cols: Vec<Elt> = (0..k)
                    .map(|c| {
                        (0..total)
                            .filter(|&r| m[r][c] != 0)
                            .map(|r| (r as u32, m[r][c] as i64))
                            .collect()
                    })
                    .collect();
                (obj.clone(), VMor::from_cols(obj, prod.clone(), cols))
            }
            Cosmos::FinSet => unreachable!(),
        };
        let proj = factors
            .iter()
            .enumerate()
            .map(|(k, o)| {
                let cols: Vec<Elt> = (0..obj.len())
                    .map(|c| {
                        incl.col(c)
                            .iter()
                            .filter(|&&(r, _)| {
                                (r as usize) >= offsets[k] && (r as usize) < offsets[k] + o.len()
                            })
                            .map(|&(r, v)| (r - offsets[k] as u32, v))
                            .collect()
                    })
                    .collect();
                VMor::from_cols(obj.clone(), o.clone(), cols)
            })
            .collect();
        let data = match self {
            Cosmos::FinVect { p } => LimitData::Vect(fp::Solver::new(&incl.to_fp(), obj.len(), *p)),
            _ => LimitData::Ab(zmod::ZSolver::new(&incl.to_z(), obj.orders(), prod.orders())),
        };
        Ok(Limit {
            cosmos: *self,
            obj,
            proj,
            factors: factors.to_vec(),
            data,
        })
    }

    /// Pullback of `f: A → C` and `g: B → C`.
    pub fn pullback(&self, f: &VMor, g: &VMor) -> Result<Limit> {
        self.limit(
            &[f.src().clone(), g.src().clone()],
            &[LimEq { left: 0, f: f.clone(), right: 1, g: g.clone() }],
        )
    }

    /// Equalizer of `f, g: A → B`.
    pub fn equalizer(&self, f: &VMor, g: &VMor) -> Result<Limit> {
        self.limit(
            &[f.src().clone()],
            &[LimEq { left: 0, f: f.clone(), right: 0, g: g.clone() }],
        )
    }

    /// The joint coequalizer of parallel pairs into `b`.
    pub fn coequalizer(&self, b: &VObj, pairs: &[(VMor, VMor)]) -> Result<Coeq> {
        for (f, g) in pairs {
            if f.dst() != b || g.dst() != b || f.src() != g.src() {
                return Err(Error::mismatch(MODULE, "coequalizer", "ill-typed parallel pair"));
            }
        }
        match self {
            Cosmos::FinSet => {
                let mut ids = Vec::new();
                for (f, g) in pairs {
                    let (tf, tg) = (f.table().unwrap(), g.table().unwrap());
                    ids.extend(tf.into_iter().zip(tg));
                }
                let (class, reps) = sets::quotient(b.len(), ids);
                let obj = self.free(reps.len());
                let q = VMor::from_table(b.clone(), obj.clone(), &class);
                let lifts = reps.into_iter().map(Self::basis_elt).collect();
                Ok(Coeq { cosmos: *self, obj, q, lifts })
            }
            _ => {
                let mut cols: Vec<Elt> = Vec::new();
                let mut src_orders = Vec::new();
                for (f, g) in pairs {
                    src_orders.extend_from_slice(f.src().orders());
                    for j in 0..f.src().len() {
                        let mut c = f.col(j).to_vec();
                        c.extend(g.col(j).iter().map(|&(i, v)| (i, -v)));
                        cols.push(c);
                    }
                }
                let d = VMor::from_cols(VObj::from_orders(src_orders), b.clone(), cols);
                self.cokernel(&d)
            }
        }
    }

    /// Cokernel of a linear map.
    pub fn cokernel(&self, d: &VMor) -> Result<Coeq> {
        let b = d.dst().clone();
        match self {
            Cosmos::FinVect { p } => {
                let s = fp::Solver::new(&d.to_fp(), d.src().len(), *p);
                let qrows = s.cokernel_rows();
                let k = qrows.len();
                let obj = self.free(k);
                let qcols: Vec<Elt> = (0..b.len())
                    .map(|j| {
                        (0..k)
                            .filter(|&i| qrows[i][j] != 0)
                            .map(|i| (i as u32, qrows[i][j] as i64))
                            .collect()
                    })
                    .collect();
                let q = VMor::from_cols(b.clone(), obj.clone(), qcols);
                let qs = fp::Solver::new(&q.to_fp(), b.len(), *p);
                let lifts = (0..k)
                    .map(|i| {
                        let mut e = vec![0; k];
                        e[i] = 1;
                        let x = qs.solve(&e).expect("quotient is surjective");
                        x.iter()
                            .enumerate()
                            .filter(|(_, &v)| v != 0)
                            .map(|(r, &v)| (r as u32, v as i64))
                            .collect()
                    })
                    .collect();
                Ok(Coeq { cosmos: *self, obj, q, lifts })
            }
            Cosmos::FgAb => {
                let (orders, qm, lm) = zmod::cokernel(&d.to_z(), d.src().len(), b.orders());
                let k = orders.len();
                let obj = VObj::from_orders(orders);
                let qcols: Vec<Elt> = (0..b.len())
                    .map(|j| {
                        (0..k)
                            .filter(|&i| qm[i][j] != 0)
                            .map(|i| (i as u32, qm[i][j] as i64))
                            .collect()
                    })
                    .collect();
                let q = VMor::from_cols(b.clone(), obj.clone(), qcols);
                let lifts = (0..k)
                    .map(|i| {
                        normalize_col(
                            &b,
                            (0..b.len())
                                .filter(|&r| lm[r][i] != 0)
                                .map(|r| (r as u32, lm[r][i] as i64))
                                .collect(),
                        )
                    })
                    .collect();
                Ok(Coeq { cosmos: *self, obj, q, lifts })
            }
            Cosmos::FinSet => Err(Error::capability(MODULE, "cokernel", "finite sets are not additive")),
        }
    }

    /// Coequalizer of a reflexive pair `d0, d1: A ⇉ B` with common section `s0`.
    pub fn reflexive_coequalizer(&self, d0: &VMor, d1: &VMor, s0: &VMor) -> Result<Coeq> {
        let id = self.id(d0.dst());
        if self.compose(s0, d0)? != id || self.compose(s0, d1)? != id {
            return Err(Error::invalid(MODULE, "reflexive_coequalizer", "s0 is not a common section"));
        }
        self.coequalizer(d0.dst(), &[(d0.clone(), d1.clone())])
    }

    /// A direct complement of the mono `m`, or `None` if the image does not split.
    pub fn complement(&self, m: &VMor) -> Result<Option<Complement>> {
        if !self.is_mono(m) {
            return Err(Error::invalid(MODULE, "complement", "morphism is not a monomorphism"));
        }
        let b = m.dst().clone();
        let (obj, incl) = match self {
            Cosmos::FinSet => {
                let t = m.table().unwrap();
                let mut hit = vec![false; b.len()];
                for i in t {
                    hit[i] = true;
                }
                let rest: Vec<usize> = (0..b.len()).filter(|&i| !hit[i]).collect();
                let obj = self.free(rest.len());
                (obj.clone(), VMor::from_table(obj, b.clone(), &rest))
            }
            Cosmos::FinVect { p } => {
                let rest = fp::complement_basis(&m.to_fp(), m.src().len(), *p);
                let obj = self.free(rest.len());
                (obj.clone(), VMor::from_table(obj, b.clone(), &rest))
            }
            Cosmos::FgAb => {
                let c = self.cokernel(m)?;
                let mz = m.to_z();
                let mut cols = Vec::new();
                for (i, lift) in c.lifts.iter().enumerate() {
                    let o = c.obj.order(i);
                    if o == 0 {
                        cols.push(lift.clone());
                        continue;
                    }
                    // find x with o·(lift + m x) = 0 in B
                    let scaled: zmod::IMat = mz
                        .iter()
                        .map(|row| row.iter().map(|v| v * o as i128).collect())
                        .collect();
                    let solver = zmod::ZSolver::new(&scaled, m.src().orders(), b.orders());
                    let mut rhs = vec![0i128; b.len()];
                    for &(r, v) in lift {
                        rhs[r as usize] = -(v as i128) * o as i128;
                    }
                    let Some(x) = solver.solve(&rhs) else {
                        return Ok(None);
                    };
                    let xe: Elt = x
                        .iter()
                        .enumerate()
                        .filter(|(_, &v)| v != 0)
                        .map(|(k, &v)| (k as u32, v as i64))
                        .collect();
                    cols.push(self.add_elt(&b, lift, &self.apply(m, &xe)));
                }
                let obj = c.obj.clone();
                (obj.clone(), VMor::from_cols(obj, b.clone(), cols))
            }
        };
        self.check_mor(&incl)?;
        let iso = self.copair(&[m.clone(), incl.clone()], &b)?;
        debug_assert!(self.is_iso(&iso));
        if !self.is_iso(&iso) {
            return Ok(None);
        }
        Ok(Some(Complement { obj, incl, iso }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tensor_examples() {
        let v = Cosmos::finvect(2).unwrap();
        assert_eq!(v.tensor(&v.free(2), &v.free(3)).len(), 6);
        let ab = Cosmos::FgAb;
        let t = ab.tensor(&ab.cyclic(&[2]).unwrap(), &ab.cyclic(&[3]).unwrap());
        assert_eq!(ab.iso_class(&t), IsoClass::Group { free: 0, torsion: vec![] });
        let i = v.unit();
        assert_eq!(v.tensor(&i, &v.free(4)), v.free(4));
    }

    #[test]
    fn initial_and_free() {
        for c in [Cosmos::FinSet, Cosmos::FinVect { p: 2 }, Cosmos::FgAb] {
            let (o, inj) = c.coproduct(&[]);
            assert!(o.is_empty() && inj.is_empty());
        }
        let s = Cosmos::FinSet;
        assert_eq!(s.u_elements(&s.unit()).unwrap(), vec![vec![(0, 1)]]);
        // linear instances: U(I) is the underlying set of the ground ring
        assert_eq!(Cosmos::FinVect { p: 3 }.u_elements(&Cosmos::FinVect { p: 3 }.unit()).unwrap().len(), 3);
        assert_eq!(Cosmos::FinVect { p: 2 }.free(2).len(), 2);
    }

    #[test]
    fn set_pullback_is_intersection() {
        let c = Cosmos::FinSet;
        let f = VMor::from_table(c.free(2), c.free(3), &[0, 1]);
        let g = VMor::from_table(c.free(2), c.free(3), &[1, 2]);
        let l = c.pullback(&f, &g).unwrap();
        assert_eq!(l.obj.len(), 1);
        assert_eq!(l.proj[0].table().unwrap(), vec![1]);
        assert_eq!(l.proj[1].table().unwrap(), vec![0]);
    }

    #[test]
    fn fgab_coequalizer_of_doubling() {
        let c = Cosmos::FgAb;
        let z = c.cyclic(&[0]).unwrap();
        let two = VMor::from_cols(z.clone(), z.clone(), vec![vec![(0, 2)]]);
        let zero = c.zero_mor(&z, &z).unwrap();
        let q = c.coequalizer(&z, &[(two, zero)]).unwrap();
        assert_eq!(c.iso_class(&q.obj), IsoClass::Group { free: 0, torsion: vec![2] });
    }

    #[test]
    fn surjectivity_tests() {
        let v = Cosmos::FinVect { p: 2 };
        let f = VMor::from_dense(v.free(2), v.free(1), &[vec![1, 1]]);
        assert!(v.u_surjective(&f));
        let c = Cosmos::FgAb;
        let z = c.cyclic(&[0]).unwrap();
        let two = VMor::from_cols(z.clone(), z.clone(), vec![vec![(0, 2)]]);
        assert!(!c.u_surjective(&two));
        assert!(c.u_injective(&two));
    }

    #[test]
    fn complements() {
        let c = Cosmos::FgAb;
        let z = c.cyclic(&[0]).unwrap();
        let two = VMor::from_cols(z.clone(), z.clone(), vec![vec![(0, 2)]]);
        assert!(c.complement(&two).unwrap().is_none());
        // Z/2 → Z/2 ⊕ Z/4 on the first summand splits
        let a = c.cyclic(&[2]).unwrap();
        let b = c.cyclic(&[2, 4]).unwrap();
        let m = VMor::from_table(a, b, &[0]);
        let comp = c.complement(&m).unwrap().unwrap();
        assert_eq!(c.iso_class(&comp.obj), IsoClass::Group { free: 0, torsion: vec![4] });
        // Z/2 → Z/4 as 2· does not split
        let a = c.cyclic(&[2]).unwrap();
        let b = c.cyclic(&[4]).unwrap();
        let m = c.mor(a, b, vec![vec![(0, 2)]]).unwrap();
        assert!(c.complement(&m).unwrap().is_none());

        let v = Cosmos::FinVect { p: 3 };
        let m = VMor::from_dense(v.free(1), v.free(2), &[vec![1], vec![1]]);
        let comp = v.complement(&m).unwrap().unwrap();
        assert_eq!(comp.obj.len(), 1);
        assert!(v.is_iso(&comp.iso));
    }

    #[test]
    fn snf_trivial_iso() {
        let c = Cosmos::FgAb;
        let a = c.cyclic(&[6]).unwrap();
        let b = c.cyclic(&[2, 3]).unwrap();
        let f = c.mor(a, b, vec![vec![(0, 1), (1, 1)]]).unwrap();
        assert!(c.is_iso(&f));
        let g = c.inverse(&f).unwrap();
        assert_eq!(c.compose(&f, &g).unwrap(), c.id(f.src()));
    }

    #[test]
    fn fgab_validity() {
        let c = Cosmos::FgAb;
        let a = c.cyclic(&[2]).unwrap();
        let z = c.cyclic(&[0]).unwrap();
        assert!(c.mor(a, z, vec![vec![(0, 1)]]).is_err());
    }

    #[test]
    fn limit_mediation_round_trip() {
        let v = Cosmos::FinVect { p: 2 };
        let f = VMor::from_dense(v.free(2), v.free(1), &[vec![1, 1]]);
        let e = v.equalizer(&f, &v.zero_mor(&v.free(2), &v.free(1)).unwrap()).unwrap();
        assert_eq!(e.obj.len(), 1);
        let leg = VMor::from_dense(v.free(1), v.free(2), &[vec![1], vec![1]]);
        let m = e.mediate(std::slice::from_ref(&leg)).unwrap();
        assert_eq!(v.compose(&m, &e.proj[0]).unwrap(), leg);
    }

    #[test]
    fn elements_of_finite_group() {
        let c = Cosmos::FgAb;
        assert_eq!(c.u_elements(&c.cyclic(&[2, 3]).unwrap()).unwrap().len(), 6);
        assert!(matches!(
            c.u_elements(&c.cyclic(&[0]).unwrap()),
            Err(Error::Capability { .. })
        ));
    }
}
