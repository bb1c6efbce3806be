//! Shared test support: constructions of the permutation groups used as
//! fixtures, built from first principles (matrix groups over small fields,
//! Mathieu groups from classical generators) and verified by order.

#![allow(dead_code)]

use braid_orbits::config::Config;
use braid_orbits::perm::{coset_action, PermGroup, Permutation};

// ---------------------------------------------------------------------------
// small finite fields
// ---------------------------------------------------------------------------

/// Field arithmetic for GF(q), q prime or 4. Elements are 0..q-1; for q = 4
/// the elements are 0, 1, w, w+1 encoded as 0, 1, 2, 3.
#[derive(Clone, Copy)]
pub struct Field {
    pub q: u8,
}

impl Field {
    pub fn add(&self, a: u8, b: u8) -> u8 {
        match self.q {
            4 => a ^ b,
            q => (a + b) % q,
        }
    }

    pub fn mul(&self, a: u8, b: u8) -> u8 {
        match self.q {
            4 => {
                // GF(4) via polynomial arithmetic mod w^2 + w + 1
                const TABLE: [[u8; 4]; 4] = [
                    [0, 0, 0, 0],
                    [0, 1, 2, 3],
                    [0, 2, 3, 1],
                    [0, 3, 1, 2],
                ];
                TABLE[a as usize][b as usize]
            }
            q => (a as u16 * b as u16 % q as u16) as u8,
        }
    }

    pub fn units(&self) -> Vec<u8> {
        (1..self.q).collect()
    }
}

// ---------------------------------------------------------------------------
// projective special linear groups
// ---------------------------------------------------------------------------

type Matrix = Vec<u8>; // row-major n x n

fn mat_vec(f: &Field, n: usize, v: &[u8], m: &[u8]) -> Vec<u8> {
    // row vector times matrix
    let mut out = vec![0u8; n];
    for (j, o) in out.iter_mut().enumerate() {
        let mut acc = 0u8;
        for i in 0..n {
            acc = f.add(acc, f.mul(v[i], m[i * n + j]));
        }
        *o = acc;
    }
    out
}

/// Canonical projective representative: first nonzero coordinate scaled to 1.
fn proj_canonical(f: &Field, v: &[u8]) -> Vec<u8> {
    let lead = v.iter().copied().find(|&x| x != 0).unwrap();
    if lead == 1 {
        return v.to_vec();
    }
    let inv = f.units().into_iter().find(|&x| f.mul(lead, x) == 1).unwrap();
    v.iter().map(|&x| f.mul(x, inv)).collect()
}

fn projective_points(f: &Field, n: usize) -> Vec<Vec<u8>> {
    let mut pts = Vec::new();
    let mut v = vec![0u8; n];
    loop {
        // advance odometer
        let mut i = 0;
        loop {
            if i == n {
                // done enumerating all q^n vectors
                pts.sort();
                pts.dedup();
                return pts;
            }
            v[i] += 1;
            if v[i] < f.q {
                break;
            }
            v[i] = 0;
            i += 1;
        }
        if v.iter().any(|&x| x != 0) {
            pts.push(proj_canonical(f, &v));
        }
    }
}

fn matrix_to_perm(f: &Field, n: usize, pts: &[Vec<u8>], m: &[u8]) -> Permutation {
    let lookup: std::collections::HashMap<&[u8], u32> = pts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i as u32))
        .collect();
    let images: Vec<u32> = pts
        .iter()
        .map(|p| {
            let image = proj_canonical(f, &mat_vec(f, n, p, m));
            lookup[image.as_slice()]
        })
        .collect();
    Permutation::from_images(images).unwrap()
}

/// PSL(n, q) acting on the points of projective (n-1)-space, generated by
/// elementary transvections on adjacent coordinate pairs.
pub fn psl(n: usize, q: u8, name: &str) -> PermGroup {
    let f = Field { q };
    let pts = projective_points(&f, n);
    let lambdas: Vec<u8> = if q == 4 { vec![1, 2] } else { vec![1] };
    let mut gens = Vec::new();
    for i in 0..n - 1 {
        for &(a, b) in &[(i, i + 1), (i + 1, i)] {
            for &l in &lambdas {
                let mut m: Matrix = vec![0; n * n];
                for d in 0..n {
                    m[d * n + d] = 1;
                }
                m[a * n + b] = l;
                gens.push(matrix_to_perm(&f, n, &pts, &m));
            }
        }
    }
    PermGroup::build(pts.len(), gens)
        .unwrap()
        .with_name(name.to_string())
}

/// PSL(2, p) on the projective line: points are infinity, 0, 1, ..., p-1
/// (infinity at index 0), generated by x -> x+1 and x -> -1/x.
pub fn psl2_line(p: u32, name: &str) -> PermGroup {
    let n = (p + 1) as usize;
    let inv = |x: u32| -> u32 { (1..p).find(|&y| x * y % p == 1).unwrap() };
    let mut shift = vec![0u32; n];
    shift[0] = 0;
    for x in 0..p {
        shift[(x + 1) as usize] = (x + 1) % p + 1;
    }
    let mut neg_inv = vec![0u32; n];
    neg_inv[0] = 1; // infinity -> 0
    neg_inv[1] = 0; // 0 -> infinity
    for x in 1..p {
        neg_inv[(x + 1) as usize] = (p - inv(x)) % p + 1;
    }
    let gens = vec![
        Permutation::from_images(shift).unwrap(),
        Permutation::from_images(neg_inv).unwrap(),
    ];
    PermGroup::build(n, gens).unwrap().with_name(name.to_string())
}

// ---------------------------------------------------------------------------
// symplectic group Sp(6,2) on the 28 minus-type quadratic forms
// ---------------------------------------------------------------------------

fn symplectic_b(x: u8, y: u8) -> u8 {
    // standard form on F_2^6 packed into bits: pairs (0,1), (2,3), (4,5)
    let mut acc = 0u8;
    for k in [0u8, 2, 4] {
        let xa = (x >> k) & 1;
        let xb = (x >> (k + 1)) & 1;
        let ya = (y >> k) & 1;
        let yb = (y >> (k + 1)) & 1;
        acc ^= (xa & yb) ^ (xb & ya);
    }
    acc
}

fn q_zero(x: u8) -> u8 {
    let mut acc = 0u8;
    for k in [0u8, 2, 4] {
        acc ^= ((x >> k) & 1) & ((x >> (k + 1)) & 1);
    }
    acc
}

/// Sp(6,2) acting on the 28 minus-type quadratic forms polarizing to the
/// standard symplectic form.
pub fn sp6_2_on_28() -> PermGroup {
    // forms as 64-bit value tables
    let form_table = |a: u8| -> u64 {
        let mut t = 0u64;
        for x in 0u8..64 {
            if q_zero(x) ^ symplectic_b(a, x) == 1 {
                t |= 1 << x;
            }
        }
        t
    };
    let mut minus_forms: Vec<u64> = Vec::new();
    for a in 0u8..64 {
        let t = form_table(a);
        if t.count_ones() == 64 - 28 {
            // 28 zeros: minus type
            minus_forms.push(t);
        }
    }
    assert_eq!(minus_forms.len(), 28);
    let index: std::collections::HashMap<u64, u32> = minus_forms
        .iter()
        .enumerate()
        .map(|(i, &t)| (t, i as u32))
        .collect();

    // symplectic transvections t_v: x -> x + B(x,v) v
    let transvection = |v: u8| -> Vec<u8> {
        (0u8..64)
            .map(|x| if symplectic_b(x, v) == 1 { x ^ v } else { x })
            .collect()
    };
    let mut gens: Vec<Permutation> = Vec::new();
    let mut group: Option<PermGroup> = None;
    for v in 1u8..64 {
        let g = transvection(v);
        let g_inv = g.clone(); // involution
        let images: Vec<u32> = minus_forms
            .iter()
            .map(|&t| {
                let mut image = 0u64;
                for x in 0u8..64 {
                    if (t >> g_inv[x as usize]) & 1 == 1 {
                        image |= 1 << x;
                    }
                }
                index[&image]
            })
            .collect();
        let p = Permutation::from_images(images).unwrap();
        if group.as_ref().map(|g| g.contains(&p)).unwrap_or(false) {
            continue;
        }
        gens.push(p);
        group = Some(PermGroup::build(28, gens.clone()).unwrap());
        if group.as_ref().unwrap().order_u64() == 1_451_520 {
            break;
        }
    }
    group.unwrap().with_name("s6_2_d28".to_string())
}

// ---------------------------------------------------------------------------
// Mathieu groups
// ---------------------------------------------------------------------------

fn pp(s: &str, n: usize) -> Permutation {
    Permutation::parse(s, n).unwrap()
}

/// M11 in its natural degree-11 action.
pub fn m11_deg11() -> PermGroup {
    let gens = vec![
        pp("(1,2,3,4,5,6,7,8,9,10,11)", 11),
        pp("(3,7,11,8)(4,10,5,6)", 11),
    ];
    PermGroup::build(11, gens).unwrap().with_name("m11_d11")
}

/// M12 on 12 points.
pub fn m12_deg12() -> PermGroup {
    let gens = vec![
        pp("(1,2,3,4,5,6,7,8,9,10,11)", 12),
        pp("(3,7,11,8)(4,10,5,6)", 12),
        pp("(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)", 12),
    ];
    PermGroup::build(12, gens).unwrap().with_name("m12_d12")
}

/// M24 on the projective line over F_23 (infinity relabelled as point 24):
/// PSL(2,23) extended by the Mathieu map acting cubically on residues.
pub fn m24() -> PermGroup {
    let p: u32 = 23;
    let inv = |x: u32| -> u32 { (1..p).find(|&y| x * y % p == 1).unwrap() };
    let is_square = |x: u32| -> bool { (1..p).any(|y| y * y % p == x) };
    // points: 1..23 are residues 1..22 and 0 at position 23; infinity at 24
    // encode residue r (0..22) as index r, infinity as index 23 (0-based)
    let shift: Vec<u32> = (0..24)
        .map(|i| if i == 23 { 23 } else { (i + 1) % 23 })
        .collect();
    let neg_inv: Vec<u32> = (0..24)
        .map(|i| match i {
            23 => 0,
            0 => 23,
            x => (p - inv(x)) % p,
        })
        .collect();
    let double: Vec<u32> = (0..24).map(|i| if i == 23 { 23 } else { (2 * i) % 23 }).collect();
    let cube = |x: u32| -> u32 { x * x % p * x % p };
    let nine_inv = inv(9);
    let delta: Vec<u32> = (0..24)
        .map(|i| match i {
            23 => 23,
            0 => 0,
            x if is_square(x) => cube(x) * nine_inv % p,
            x => 9 * cube(x) % p,
        })
        .collect();
    let gens = vec![
        Permutation::from_images(shift).unwrap(),
        Permutation::from_images(double).unwrap(),
        Permutation::from_images(neg_inv).unwrap(),
        Permutation::from_images(delta).unwrap(),
    ];
    // base hint: point 24 first, so the M23 stabilizer falls out of the chain
    PermGroup::build_with_base(24, gens, &[23])
        .unwrap()
        .with_name("m24_d24")
}

/// M23 as the stabilizer of the last point in M24, acting on 23 points.
pub fn m23() -> PermGroup {
    let big = m24();
    assert_eq!(big.base()[0], 23);
    let gens: Vec<Permutation> = big
        .first_point_stabilizer_gens()
        .into_iter()
        .map(|g| {
            let images: Vec<u32> = g.images()[..23].to_vec();
            Permutation::from_images(images).unwrap()
        })
        .collect();
    PermGroup::build(23, gens).unwrap().with_name("m23_d23")
}

// ---------------------------------------------------------------------------
// degree-switching helpers
// ---------------------------------------------------------------------------

/// Finds a subgroup of the given order generated by a pair of random
/// elements, deterministically from a fixed seed, then returns the coset
/// action of that subgroup.
pub fn coset_action_on_subgroup_of_order(
    group: &PermGroup,
    target: u64,
    name: &str,
) -> PermGroup {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    let cfg = Config::default();
    for _ in 0..100_000 {
        let a = group.random_element(&mut rng);
        let b = group.random_element(&mut rng);
        let h = PermGroup::build(group.degree(), vec![a, b]).unwrap();
        if h.order_u64() == target {
            let act = coset_action(group, h.generators(), &cfg).unwrap();
            return act.quotient.with_name(name.to_string());
        }
    }
    panic!("no subgroup of order {target} found in {}", group.name());
}

/// L2(11) in its exceptional degree-11 action (cosets of A5).
pub fn l2_11_deg11() -> PermGroup {
    let g = psl2_line(11, "l2_11_d12");
    coset_action_on_subgroup_of_order(&g, 60, "l2_11_d11")
}

/// M11 in its degree-12 action (cosets of L2(11)).
pub fn m11_deg12() -> PermGroup {
    let g = m11_deg11();
    coset_action_on_subgroup_of_order(&g, 660, "m11_d12")
}

// ---------------------------------------------------------------------------
// tiny groups used by the oracles
// ---------------------------------------------------------------------------

pub fn sym(n: usize, name: &str) -> PermGroup {
    let mut cycle: Vec<u32> = (1..n as u32).collect();
    cycle.push(0);
    let gens = vec![
        Permutation::from_cycles(n, &[vec![0, 1]]).unwrap(),
        Permutation::from_images(cycle).unwrap(),
    ];
    PermGroup::build(n, gens).unwrap().with_name(name.to_string())
}

pub fn alt(n: usize, name: &str) -> PermGroup {
    let gens = vec![
        Permutation::from_cycles(n, &[vec![0, 1, 2]]).unwrap(),
        if n % 2 == 1 {
            let cycle: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
            Permutation::from_images(cycle).unwrap()
        } else {
            let mut images: Vec<u32> = (0..n as u32).collect();
            for i in 1..n - 1 {
                images[i] = (i as u32 % (n as u32 - 1)) + 1;
            }
            // (2,3,...,n) fixing 1
            let mut v: Vec<u32> = vec![0];
            v.extend((1..n as u32).map(|i| if i == n as u32 - 1 { 1 } else { i + 1 }));
            Permutation::from_images(v).unwrap()
        },
    ];
    PermGroup::build(n, gens).unwrap().with_name(name.to_string())
}

pub fn dihedral(n: usize, name: &str) -> PermGroup {
    let rotation: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    let reflection: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
    let gens = vec![
        Permutation::from_images(rotation).unwrap(),
        Permutation::from_images(reflection).unwrap(),
    ];
    PermGroup::build(n, gens).unwrap().with_name(name.to_string())
}

pub fn s3() -> PermGroup {
    sym(3, "s3")
}
