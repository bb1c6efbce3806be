//! Conjugacy classes: discovery by scanning elements in stabilizer-chain
//! order, per-class element tables with transporters, centralizers via
//! Schreier generators, and transporter / tuple-conjugator searches.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{PermError, PermGroup, Permutation};
use crate::config::Config;

pub type ClassId = usize;

/// Hash-indexed set of permutations; values are indices into an external
/// element vector. Uses a fixed FNV hash so collisions are resolved by
/// comparing the actual permutations.
#[derive(Clone, Debug, Default)]
struct PermIndex {
    map: HashMap<u64, Vec<u32>>,
}

fn perm_hash(p: &Permutation) -> u64 {
    let mut h = 0xcbf29ce484222325u64;
    for &x in p.images() {
        h ^= x as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

impl PermIndex {
    fn insert(&mut self, p: &Permutation, idx: u32) {
        self.map.entry(perm_hash(p)).or_default().push(idx);
    }

    fn find(&self, p: &Permutation, elements: &[Permutation]) -> Option<u32> {
        self.map
            .get(&perm_hash(p))?
            .iter()
            .copied()
            .find(|&i| &elements[i as usize] == p)
    }
}

/// The conjugation orbit of a root element under a list of group generators,
/// with a transporter per element (`root^t = element`) and Schreier-reduced
/// generators of the stabilizer (the centralizer of the root).
#[derive(Clone, Debug)]
pub struct ConjOrbit {
    pub root: Permutation,
    pub elements: Vec<Permutation>,
    pub transporters: Vec<Permutation>,
    index: PermIndex,
    pub stabilizer_gens: Vec<Permutation>,
}

impl ConjOrbit {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, x: &Permutation) -> Option<u32> {
        self.index.find(x, &self.elements)
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.position(x).is_some()
    }

    /// A `t` with `root^t = x`, if `x` lies in the orbit.
    pub fn transporter_to(&self, x: &Permutation) -> Option<&Permutation> {
        self.position(x).map(|i| &self.transporters[i as usize])
    }
}

/// Full conjugation orbit of `root` under `gens`, erroring past `cap`.
pub fn conjugation_orbit(
    degree: usize,
    gens: &[Permutation],
    root: &Permutation,
    cap: usize,
) -> Result<ConjOrbit, PermError> {
    let mut orbit = ConjOrbit {
        root: root.clone(),
        elements: vec![root.clone()],
        transporters: vec![Permutation::identity(degree)],
        index: PermIndex::default(),
        stabilizer_gens: Vec::new(),
    };
    orbit.index.insert(root, 0);
    let mut stab: Option<PermGroup> = None;
    let mut head = 0;
    while head < orbit.elements.len() {
        let x = orbit.elements[head].clone();
        let tx = orbit.transporters[head].clone();
        head += 1;
        for g in gens {
            let y = x.conjugate_by(g);
            match orbit.index.find(&y, &orbit.elements) {
                Some(j) => {
                    // Schreier generator of the stabilizer
                    let ty = &orbit.transporters[j as usize];
                    let h = tx.compose(g).compose(&ty.inverse());
                    if h.is_identity() {
                        continue;
                    }
                    let known = stab.as_ref().map(|s| s.contains(&h)).unwrap_or(false);
                    if !known {
                        orbit.stabilizer_gens.push(h);
                        stab = Some(PermGroup::build(degree, orbit.stabilizer_gens.clone())?);
                    }
                }
                None => {
                    if orbit.elements.len() >= cap {
                        return Err(PermError::EnumerationBound {
                            order: format!("conjugation orbit of {root}"),
                            bound: cap as u64,
                        });
                    }
                    let idx = orbit.elements.len() as u32;
                    orbit.index.insert(&y, idx);
                    orbit.elements.push(y);
                    orbit.transporters.push(tx.compose(g));
                }
            }
        }
    }
    Ok(orbit)
}

/// BFS for a single transporter `t` with `g^t = h`, stopping as soon as `h`
/// is reached. Returns `None` when the full orbit of `g` avoids `h`.
pub fn transporter_bfs(
    degree: usize,
    gens: &[Permutation],
    g: &Permutation,
    h: &Permutation,
    cap: usize,
) -> Result<Option<Permutation>, PermError> {
    if g == h {
        return Ok(Some(Permutation::identity(degree)));
    }
    if g.cycle_type() != h.cycle_type() {
        return Ok(None);
    }
    let mut elements = vec![g.clone()];
    let mut transporters = vec![Permutation::identity(degree)];
    let mut index = PermIndex::default();
    index.insert(g, 0);
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        let tx = transporters[head].clone();
        head += 1;
        for s in gens {
            let y = x.conjugate_by(s);
            if index.find(&y, &elements).is_none() {
                let t = tx.compose(s);
                if &y == h {
                    return Ok(Some(t));
                }
                if elements.len() >= cap {
                    return Err(PermError::EnumerationBound {
                        order: format!("transporter orbit of {g}"),
                        bound: cap as u64,
                    });
                }
                index.insert(&y, elements.len() as u32);
                elements.push(y);
                transporters.push(t);
            }
        }
    }
    Ok(None)
}

/// One conjugacy class: ATLAS-like label, minimal representative, size,
/// full element table with transporters, and the centralizer of the
/// representative.
#[derive(Debug)]
pub struct ConjugacyClass {
    pub label: String,
    pub id: ClassId,
    pub representative: Permutation,
    pub element_order: u64,
    pub size: u64,
    pub orbit: ConjOrbit,
    /// `orbit.root ^ root_to_rep = representative`
    root_to_rep: Permutation,
    pub centralizer: PermGroup,
}

impl ConjugacyClass {
    /// Builds a class directly from a representative, without scanning the
    /// whole group. Used when full class data is out of enumeration bounds.
    pub fn from_representative(
        group_gens: &[Permutation],
        degree: usize,
        rep: Permutation,
        label: impl Into<String>,
        cap: usize,
    ) -> Result<Self, PermError> {
        let orbit = conjugation_orbit(degree, group_gens, &rep, cap)?;
        let centralizer = centralizer_from_orbit(degree, &orbit, &Permutation::identity(degree));
        Ok(ConjugacyClass {
            label: label.into(),
            id: 0,
            element_order: rep.order(),
            size: orbit.len() as u64,
            root_to_rep: Permutation::identity(degree),
            representative: rep,
            orbit,
            centralizer,
        })
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.orbit.contains(x)
    }

    /// A `t` with `representative^t = x`, if `x` lies in the class.
    pub fn transporter_from_rep(&self, x: &Permutation) -> Option<Permutation> {
        let tx = self.orbit.transporter_to(x)?;
        if self.root_to_rep.is_identity() {
            return Some(tx.clone());
        }
        Some(self.root_to_rep.inverse().compose(tx))
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.orbit.elements
    }

    pub fn centralizer_order(&self) -> &BigUint {
        self.centralizer.order()
    }
}

/// Centralizer of the orbit root conjugated to sit at `root^shift`.
fn centralizer_from_orbit(degree: usize, orbit: &ConjOrbit, shift: &Permutation) -> PermGroup {
    let mut gens: Vec<Permutation> = orbit
        .stabilizer_gens
        .iter()
        .map(|g| g.conjugate_by(shift))
        .collect();
    if gens.is_empty() {
        gens.push(Permutation::identity(degree));
    }
    PermGroup::build(degree, gens).expect("centralizer generators are valid")
}

/// Complete conjugacy class data for a group.
#[derive(Debug)]
pub struct ClassData {
    pub classes: Vec<ConjugacyClass>,
    /// cycle type -> candidate class ids
    dispatch: HashMap<Vec<u32>, Vec<ClassId>>,
}

impl ClassData {
    pub fn compute(group: &PermGroup, cfg: &Config) -> Result<ClassData, PermError> {
        let order = group
            .order()
            .to_u64()
            .filter(|&o| o <= cfg.class_enumeration_bound)
            .ok_or_else(|| PermError::EnumerationBound {
                order: group.order().to_string(),
                bound: cfg.class_enumeration_bound,
            })?;
        let degree = group.degree();
        let gens = group.generators();

        // Discover classes by scanning elements in chain order.
        let mut found: Vec<ConjOrbit> = Vec::new();
        let mut covered: u64 = 0;
        for g in group.elements() {
            if covered == order {
                break;
            }
            if found.iter().any(|orbit| orbit.contains(&g)) {
                continue;
            }
            let orbit = conjugation_orbit(degree, gens, &g, order as usize)?;
            covered += orbit.len() as u64;
            found.push(orbit);
        }
        debug_assert_eq!(covered, order);

        // Canonical representative: the minimal element of each class.
        let mut classes: Vec<ConjugacyClass> = Vec::new();
        for orbit in found {
            let (min_idx, rep) = orbit
                .elements
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.cmp(b.1))
                .map(|(i, p)| (i, p.clone()))
                .unwrap();
            let root_to_rep = orbit.transporters[min_idx].clone();
            let centralizer = centralizer_from_orbit(degree, &orbit, &root_to_rep);
            classes.push(ConjugacyClass {
                label: String::new(),
                id: 0,
                element_order: rep.order(),
                size: orbit.len() as u64,
                representative: rep,
                orbit,
                root_to_rep,
                centralizer,
            });
        }

        sort_and_label(&mut classes);
        let mut dispatch: HashMap<Vec<u32>, Vec<ClassId>> = HashMap::new();
        for (id, class) in classes.iter_mut().enumerate() {
            class.id = id;
            dispatch
                .entry(class.representative.cycle_type())
                .or_default()
                .push(id);
        }
        Ok(ClassData { classes, dispatch })
    }

    pub fn class_of(&self, x: &Permutation) -> Option<ClassId> {
        self.dispatch
            .get(&x.cycle_type())?
            .iter()
            .copied()
            .find(|&id| self.classes[id].contains(x))
    }

    pub fn by_label(&self, label: &str) -> Option<&ConjugacyClass> {
        self.classes.iter().find(|c| c.label == label)
    }
}

/// Label order: ascending element order, then descending class size, then the
/// power map (powers of the representative landing in earlier classes first),
/// then the minimal image array of the representative.
fn sort_and_label(classes: &mut Vec<ConjugacyClass>) {
    classes.sort_by(|a, b| {
        (a.element_order, std::cmp::Reverse(a.size), &a.representative).cmp(&(
            b.element_order,
            std::cmp::Reverse(b.size),
            &b.representative,
        ))
    });
    // Provisional positions feed the power-map key; a single pass suffices
    // because powers of tied classes land either in strictly earlier classes
    // or inside the same tie group.
    let provisional: Vec<(u64, u64, Permutation)> = classes
        .iter()
        .map(|c| (c.element_order, c.size, c.representative.clone()))
        .collect();
    let position_of = |x: &Permutation, classes: &[ConjugacyClass]| -> usize {
        classes
            .iter()
            .position(|c| c.contains(x))
            .expect("power of a class representative lies in some class")
    };
    let mut keys: Vec<Vec<usize>> = Vec::new();
    for c in classes.iter() {
        let mut key = Vec::new();
        for k in 2..c.element_order {
            key.push(position_of(&c.representative.pow(k as i64), classes));
        }
        keys.push(key);
    }
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by(|&i, &j| {
        let a = &provisional[i];
        let b = &provisional[j];
        (a.0, std::cmp::Reverse(a.1), &keys[i], &a.2).cmp(&(
            b.0,
            std::cmp::Reverse(b.1),
            &keys[j],
            &b.2,
        ))
    });
    let mut reordered: Vec<ConjugacyClass> = Vec::with_capacity(classes.len());
    for &i in &order {
        reordered.push(std::mem::replace(
            &mut classes[i],
            ConjugacyClass {
                label: String::new(),
                id: usize::MAX,
                representative: Permutation::identity(0),
                element_order: 0,
                size: 0,
                orbit: ConjOrbit {
                    root: Permutation::identity(0),
                    elements: Vec::new(),
                    transporters: Vec::new(),
                    index: PermIndex::default(),
                    stabilizer_gens: Vec::new(),
                },
                root_to_rep: Permutation::identity(0),
                centralizer: PermGroup::build(1, vec![Permutation::identity(1)]).unwrap(),
            },
        ));
    }
    *classes = reordered;
    let mut counter: HashMap<u64, u32> = HashMap::new();
    for class in classes.iter_mut() {
        let n = counter.entry(class.element_order).or_insert(0);
        class.label = format!("{}{}", class.element_order, suffix(*n));
        *n += 1;
    }
}

fn suffix(mut n: u32) -> String {
    // A, B, ..., Z, AA, AB, ...
    let mut out = Vec::new();
    loop {
        out.push(b'A' + (n % 26) as u8);
        if n < 26 {
            break;
        }
        n = n / 26 - 1;
    }
    out.reverse();
    String::from_utf8(out).unwrap()
}

impl PermGroup {
    /// Complete conjugacy class data, computed once and cached.
    pub fn class_data(&self, cfg: &Config) -> Result<&ClassData, PermError> {
        if let Some(d) = self.classes.get() {
            return Ok(d);
        }
        let d = ClassData::compute(self, cfg)?;
        let _ = self.classes.set(d);
        Ok(self.classes.get().unwrap())
    }

    pub fn conjugacy_classes(&self, cfg: &Config) -> Result<&[ConjugacyClass], PermError> {
        Ok(&self.class_data(cfg)?.classes)
    }

    /// Some `t` in the group with `g^t = h`, or `None` if `g` and `h` are not
    /// conjugate. Uses class tables when available, BFS otherwise.
    pub fn transporter(
        &self,
        g: &Permutation,
        h: &Permutation,
        cfg: &Config,
    ) -> Result<Option<Permutation>, PermError> {
        if !self.contains(g) || !self.contains(h) {
            return Err(PermError::NotAMember);
        }
        if let Some(data) = self.classes.get() {
            let cg = data.class_of(g);
            let ch = data.class_of(h);
            return Ok(match (cg, ch) {
                (Some(a), Some(b)) if a == b => {
                    let class = &data.classes[a];
                    let tg = class.transporter_from_rep(g).unwrap();
                    let th = class.transporter_from_rep(h).unwrap();
                    Some(tg.inverse().compose(&th))
                }
                _ => None,
            });
        }
        transporter_bfs(self.degree(), self.generators(), g, h, cfg.orbit_cap)
    }

    /// Centralizer of `g` in the group.
    pub fn centralizer_of(&self, g: &Permutation, cfg: &Config) -> Result<PermGroup, PermError> {
        if let Some(data) = self.classes.get() {
            if let Some(id) = data.class_of(g) {
                let class = &data.classes[id];
                let t = class.transporter_from_rep(g).unwrap();
                let gens: Vec<Permutation> = class
                    .centralizer
                    .generators()
                    .iter()
                    .map(|c| c.conjugate_by(&t))
                    .collect();
                return PermGroup::build(self.degree(), gens);
            }
        }
        let orbit = conjugation_orbit(self.degree(), self.generators(), g, cfg.orbit_cap)?;
        Ok(centralizer_from_orbit(
            self.degree(),
            &orbit,
            &Permutation::identity(self.degree()),
        ))
    }

    /// Some `c` with `s_i^c = t_i` for all `i` simultaneously, or `None`.
    pub fn tuple_conjugator(
        &self,
        s: &[Permutation],
        t: &[Permutation],
        cfg: &Config,
    ) -> Result<Option<Permutation>, PermError> {
        if s.len() != t.len() {
            return Err(PermError::DegreeMismatch(s.len(), t.len()));
        }
        if s.is_empty() {
            return Ok(Some(self.identity()));
        }
        let c1 = match self.transporter(&s[0], &t[0], cfg)? {
            Some(c) => c,
            None => return Ok(None),
        };
        let centralizer = self.centralizer_of(&t[0], cfg)?;
        let rest_s: Vec<Permutation> = s[1..].iter().map(|x| x.conjugate_by(&c1)).collect();
        let rest_t: Vec<Permutation> = t[1..].to_vec();
        Ok(simultaneous_transporter(
            self.degree(),
            centralizer.generators(),
            &rest_s,
            &rest_t,
            cfg.orbit_cap,
        )?
        .map(|d| c1.compose(&d)))
    }
}

/// Finds `c` in the group generated by `gens` with `s_i^c = t_i` for all `i`,
/// by descending through iterated stabilizers.
pub fn simultaneous_transporter(
    degree: usize,
    gens: &[Permutation],
    s: &[Permutation],
    t: &[Permutation],
    cap: usize,
) -> Result<Option<Permutation>, PermError> {
    if s.is_empty() {
        return Ok(Some(Permutation::identity(degree)));
    }
    if s[0].cycle_type() != t[0].cycle_type() {
        return Ok(None);
    }
    let orbit = conjugation_orbit(degree, gens, &s[0], cap)?;
    let c = match orbit.transporter_to(&t[0]) {
        Some(c) => c.clone(),
        None => return Ok(None),
    };
    if s.len() == 1 {
        return Ok(Some(c));
    }
    // Solutions form Stab(s[0]) * c; pull the remaining targets back by c.
    let cinv = c.inverse();
    let rest_t: Vec<Permutation> = t[1..].iter().map(|x| x.conjugate_by(&cinv)).collect();
    let stab_gens = if orbit.stabilizer_gens.is_empty() {
        vec![Permutation::identity(degree)]
    } else {
        orbit.stabilizer_gens.clone()
    };
    Ok(
        simultaneous_transporter(degree, &stab_gens, &s[1..], &rest_t, cap)?
            .map(|z| z.compose(&c)),
    )
}
