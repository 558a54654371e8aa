//! Fock-space model of the four-photon GHZ source.
//!
//! Photons live in twelve modes: six spatial paths (`a`, `b` before the
//! polarizing beam splitter, `1`..`4` at the detectors) times two
//! polarizations. Every optical element is a linear map on creation
//! operators; states are expanded photon by photon and renormalized with
//! the bosonic `√n!` factors.
//!
//! Conventions: a half-wave plate at angle θ maps `H → cos2θ H + sin2θ V`
//! and `V → sin2θ H − cos2θ V`; the PBS transmits H and reflects V with no
//! extra phase; the 50:50 beam splitter is symmetric with `i` on reflection.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::statevector::StateVector;

pub const MODES: usize = 12;
pub const MAX_PHOTONS: u32 = 4;

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Spatial {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "1")]
    Out1,
    #[serde(rename = "2")]
    Out2,
    #[serde(rename = "3")]
    Out3,
    #[serde(rename = "4")]
    Out4,
}

impl Spatial {
    pub const ALL: [Spatial; 6] = [
        Spatial::A,
        Spatial::B,
        Spatial::Out1,
        Spatial::Out2,
        Spatial::Out3,
        Spatial::Out4,
    ];
    pub const DETECTORS: [Spatial; 4] =
        [Spatial::Out1, Spatial::Out2, Spatial::Out3, Spatial::Out4];

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Spatial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spatial::A => "a",
            Spatial::B => "b",
            Spatial::Out1 => "1",
            Spatial::Out2 => "2",
            Spatial::Out3 => "3",
            Spatial::Out4 => "4",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Polarization {
    H,
    V,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModeLabel {
    pub spatial: Spatial,
    pub pol: Polarization,
}

impl ModeLabel {
    pub fn new(spatial: Spatial, pol: Polarization) -> Self {
        ModeLabel { spatial, pol }
    }

    pub fn index(self) -> usize {
        self.spatial.index() * 2 + self.pol as usize
    }

    pub fn from_index(i: usize) -> Self {
        let pol = if i.is_multiple_of(2) {
            Polarization::H
        } else {
            Polarization::V
        };
        ModeLabel {
            spatial: Spatial::ALL[i / 2],
            pol,
        }
    }
}

/// Photon number per mode, indexed by [`ModeLabel::index`].
pub type Occupation = [u8; MODES];

fn factorial(n: u8) -> f64 {
    (1..=n as u64).product::<u64>() as f64
}

fn bosonic_weight(occ: &Occupation) -> f64 {
    occ.iter().map(|&n| factorial(n)).product::<f64>().sqrt()
}

/// Superposition of occupation-number states.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FockState {
    branches: BTreeMap<Occupation, C64>,
}

impl FockState {
    pub fn vacuum() -> Self {
        FockState {
            branches: BTreeMap::from([([0; MODES], C64::new(1.0, 0.0))]),
        }
    }

    pub fn from_branches(branches: impl IntoIterator<Item = (Occupation, C64)>) -> Result<Self> {
        let mut st = FockState::default();
        for (occ, amp) in branches {
            if occ.iter().map(|&n| n as u32).sum::<u32>() > MAX_PHOTONS {
                return Err(Error::InvalidParameter(format!(
                    "more than {MAX_PHOTONS} photons in a branch"
                )));
            }
            *st.branches.entry(occ).or_default() += amp;
        }
        st.prune();
        Ok(st)
    }

    pub fn branches(&self) -> &BTreeMap<Occupation, C64> {
        &self.branches
    }

    pub fn norm(&self) -> f64 {
        self.branches
            .values()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn normalize(&mut self) -> Result<()> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::ZeroProjection);
        }
        self.branches.values_mut().for_each(|a| *a /= n);
        Ok(())
    }

    fn prune(&mut self) {
        self.branches.retain(|_, a| a.norm_sqr() > 1e-30);
    }

    pub fn photon_numbers(&self) -> Vec<u32> {
        self.branches
            .keys()
            .map(|o| o.iter().map(|&n| n as u32).sum())
            .collect()
    }

    pub fn occupation(&self, mode: ModeLabel, occ: &Occupation) -> u8 {
        occ[mode.index()]
    }

    /// Applies `Σ coef · a†_m1 a†_m2` (a bilinear creation operator), unnormalized.
    pub fn apply_pair_creation(&self, terms: &[(ModeLabel, ModeLabel, C64)]) -> Result<Self> {
        let mut out: BTreeMap<Occupation, C64> = BTreeMap::new();
        for (occ, amp) in &self.branches {
            for &(m1, m2, c) in terms {
                let mut next = *occ;
                let mut factor = c;
                for m in [m1, m2] {
                    next[m.index()] += 1;
                    factor *= (next[m.index()] as f64).sqrt();
                }
                if next.iter().map(|&n| n as u32).sum::<u32>() > MAX_PHOTONS {
                    return Err(Error::InvalidParameter(format!(
                        "more than {MAX_PHOTONS} photons"
                    )));
                }
                *out.entry(next).or_default() += amp * factor;
            }
        }
        let mut st = FockState { branches: out };
        st.prune();
        Ok(st)
    }

    /// Transforms every photon through `element`.
    pub fn apply_element(&self, element: &OpticalElement) -> Result<Self> {
        element.validate(self)?;
        let mut out: BTreeMap<Occupation, C64> = BTreeMap::new();
        for (occ, amp) in &self.branches {
            let photons: Vec<ModeLabel> = occ
                .iter()
                .enumerate()
                .flat_map(|(i, &n)| std::iter::repeat_n(ModeLabel::from_index(i), n as usize))
                .collect();
            let images: Vec<Vec<(ModeLabel, C64)>> =
                photons.iter().map(|&m| element.image(m)).collect();
            let base = amp / bosonic_weight(occ);
            expand(&images, 0, [0; MODES], base, &mut out);
        }
        let mut st = FockState { branches: out };
        st.prune();
        Ok(st)
    }

    pub fn apply_chain(&self, chain: &[OpticalElement]) -> Result<Self> {
        chain
            .iter()
            .try_fold(self.clone(), |st, e| st.apply_element(e))
    }
}

fn expand(
    images: &[Vec<(ModeLabel, C64)>],
    depth: usize,
    occ: Occupation,
    coef: C64,
    out: &mut BTreeMap<Occupation, C64>,
) {
    if depth == images.len() {
        *out.entry(occ).or_default() += coef * bosonic_weight(&occ);
        return;
    }
    for &(m, c) in &images[depth] {
        let mut next = occ;
        next[m.index()] += 1;
        expand(images, depth + 1, next, coef * c, out);
    }
}

/// Linear-optical element acting on creation operators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "element", rename_all = "lowercase")]
pub enum OpticalElement {
    /// Half-wave plate in one spatial mode; fast axis at `angle_deg` from H.
    Hwp { mode: Spatial, angle_deg: f64 },
    /// Polarizing beam splitter: H goes `inputs[k] → outputs[k]`, V crosses.
    Pbs {
        inputs: [Spatial; 2],
        outputs: [Spatial; 2],
    },
    /// Polarization-independent symmetric 50:50 beam splitter.
    Bs {
        inputs: [Spatial; 2],
        outputs: [Spatial; 2],
    },
}

impl OpticalElement {
    fn validate(&self, st: &FockState) -> Result<()> {
        let (inputs, outputs) = match self {
            OpticalElement::Hwp { .. } => return Ok(()),
            OpticalElement::Pbs { inputs, outputs } | OpticalElement::Bs { inputs, outputs } => {
                (inputs, outputs)
            }
        };
        if inputs[0] == inputs[1] || outputs[0] == outputs[1] {
            return Err(Error::InvalidParameter(format!(
                "element {self:?} repeats a mode"
            )));
        }
        for out in outputs.iter().filter(|o| !inputs.contains(o)) {
            let busy = st.branches.keys().any(|occ| {
                occ[ModeLabel::new(*out, Polarization::H).index()]
                    + occ[ModeLabel::new(*out, Polarization::V).index()]
                    > 0
            });
            if busy {
                return Err(Error::OccupiedOutput(out.to_string()));
            }
        }
        Ok(())
    }

    /// Image of `a†_mode` as a list of (mode, amplitude).
    pub fn image(&self, mode: ModeLabel) -> Vec<(ModeLabel, C64)> {
        let one = C64::new(1.0, 0.0);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        match *self {
            OpticalElement::Hwp { mode: m, angle_deg } if m == mode.spatial => {
                let t = 2.0 * angle_deg.to_radians();
                let (c, s) = (t.cos(), t.sin());
                let h = ModeLabel::new(m, Polarization::H);
                let v = ModeLabel::new(m, Polarization::V);
                match mode.pol {
                    Polarization::H => vec![(h, one * c), (v, one * s)],
                    Polarization::V => vec![(h, one * s), (v, -one * c)],
                }
            }
            OpticalElement::Pbs { inputs, outputs } => {
                match inputs.iter().position(|&i| i == mode.spatial) {
                    Some(k) => {
                        let target = match mode.pol {
                            Polarization::H => outputs[k],
                            Polarization::V => outputs[1 - k],
                        };
                        vec![(ModeLabel::new(target, mode.pol), one)]
                    }
                    None => vec![(mode, one)],
                }
            }
            OpticalElement::Bs { inputs, outputs } => {
                match inputs.iter().position(|&i| i == mode.spatial) {
                    Some(k) => vec![
                        (ModeLabel::new(outputs[k], mode.pol), C64::new(r, 0.0)),
                        (ModeLabel::new(outputs[1 - k], mode.pol), C64::new(0.0, r)),
                    ],
                    None => vec![(mode, one)],
                }
            }
            OpticalElement::Hwp { .. } => vec![(mode, one)],
        }
    }
}

/// Relative weighting of the three second-order emission branches.
#[derive(Copy, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SourceWeighting {
    /// `|2H>_a|2V>_b + |2V>_a|2H>_b + |HV>_a|HV>_b`, equal amplitudes.
    #[default]
    AsWritten,
    /// Normalized `(a†_H b†_V + e^{iθ} a†_V b†_H)² |0>`.
    Emission { relative_phase: f64 },
}

fn occ_of(modes: &[(Spatial, Polarization, u8)]) -> Occupation {
    let mut occ = [0; MODES];
    for &(s, p, n) in modes {
        occ[ModeLabel::new(s, p).index()] = n;
    }
    occ
}

/// Second-order down-conversion emission into modes `a` and `b`.
pub fn spdc_second_order(weighting: SourceWeighting) -> FockState {
    use Polarization::{H, V};
    use Spatial::{A, B};
    match weighting {
        SourceWeighting::AsWritten => {
            let amp = C64::new(1.0 / 3f64.sqrt(), 0.0);
            FockState::from_branches([
                (occ_of(&[(A, H, 2), (B, V, 2)]), amp),
                (occ_of(&[(A, V, 2), (B, H, 2)]), amp),
                (occ_of(&[(A, H, 1), (A, V, 1), (B, H, 1), (B, V, 1)]), amp),
            ])
            .expect("four photons")
        }
        SourceWeighting::Emission { relative_phase } => {
            let terms = [
                (
                    ModeLabel::new(A, H),
                    ModeLabel::new(B, V),
                    C64::new(1.0, 0.0),
                ),
                (
                    ModeLabel::new(A, V),
                    ModeLabel::new(B, H),
                    C64::from_polar(1.0, relative_phase),
                ),
            ];
            let mut st = FockState::vacuum()
                .apply_pair_creation(&terms)
                .and_then(|s| s.apply_pair_creation(&terms))
                .expect("four photons");
            st.normalize().expect("nonzero emission");
            st
        }
    }
}

/// HWP at 22.5° in mode `b`, PBS overlap of `a` and `b` into `1` and `3`,
/// then one beam splitter per PBS output feeding detectors `1,2` and `3,4`.
pub fn ghz_chain() -> Vec<OpticalElement> {
    use Spatial::*;
    vec![
        OpticalElement::Hwp {
            mode: B,
            angle_deg: 22.5,
        },
        OpticalElement::Pbs {
            inputs: [A, B],
            outputs: [Out1, Out3],
        },
        OpticalElement::Bs {
            inputs: [Out1, Out2],
            outputs: [Out1, Out2],
        },
        OpticalElement::Bs {
            inputs: [Out3, Out4],
            outputs: [Out3, Out4],
        },
    ]
}

#[derive(Clone, Debug)]
pub struct PostSelection {
    /// Qubit `k` is the polarization in detector mode `k + 1` (H = 0, V = 1).
    pub state: StateVector,
    pub success_probability: f64,
}

/// Keeps only branches with exactly one photon in each detector mode.
pub fn postselect_one_per_mode(st: &FockState) -> Result<PostSelection> {
    let total = st.norm().powi(2);
    let mut amps = vec![C64::new(0.0, 0.0); 16];
    let mut kept = 0.0;
    for (occ, amp) in st.branches() {
        let upstream = [Spatial::A, Spatial::B].iter().any(|&s| {
            occ[ModeLabel::new(s, Polarization::H).index()]
                + occ[ModeLabel::new(s, Polarization::V).index()]
                > 0
        });
        if upstream {
            continue;
        }
        let mut index = 0usize;
        let mut ok = true;
        for (q, &s) in Spatial::DETECTORS.iter().enumerate() {
            let h = occ[ModeLabel::new(s, Polarization::H).index()];
            let v = occ[ModeLabel::new(s, Polarization::V).index()];
            match (h, v) {
                (1, 0) => {}
                (0, 1) => index |= 1 << q,
                _ => ok = false,
            }
        }
        if ok {
            amps[index] += amp;
            kept += amp.norm_sqr();
        }
    }
    if kept <= 1e-300 {
        return Err(Error::EmptyPostSelection);
    }
    let norm = kept.sqrt();
    amps.iter_mut().for_each(|a| *a /= norm);
    Ok(PostSelection {
        state: StateVector::from_amplitudes(amps)?,
        success_probability: kept / total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Polarization::{H, V};
    use Spatial::*;

    /// Output amplitude through a linear network via matrix permanents.
    mod permanent_oracle {
        use super::*;

        pub fn element_matrix(e: &OpticalElement) -> [[C64; MODES]; MODES] {
            let mut m = [[C64::new(0.0, 0.0); MODES]; MODES];
            for (col, image) in (0..MODES).map(|c| (c, e.image(ModeLabel::from_index(c)))) {
                for (mode, amp) in image {
                    m[mode.index()][col] += amp;
                }
            }
            m
        }

        pub fn compose(chain: &[OpticalElement]) -> [[C64; MODES]; MODES] {
            let mut u = [[C64::new(0.0, 0.0); MODES]; MODES];
            (0..MODES).for_each(|i| u[i][i] = C64::new(1.0, 0.0));
            for e in chain {
                let m = element_matrix(e);
                let mut next = [[C64::new(0.0, 0.0); MODES]; MODES];
                for i in 0..MODES {
                    for j in 0..MODES {
                        next[i][j] = (0..MODES).map(|k| m[i][k] * u[k][j]).sum();
                    }
                }
                u = next;
            }
            u
        }

        fn permanent(rows: &[usize], cols: &[usize], u: &[[C64; MODES]; MODES]) -> C64 {
            if rows.is_empty() {
                return C64::new(1.0, 0.0);
            }
            let mut acc = C64::new(0.0, 0.0);
            for (k, &c) in cols.iter().enumerate() {
                let rest: Vec<usize> = cols
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != k)
                    .map(|(_, &c)| c)
                    .collect();
                acc += u[rows[0]][c] * permanent(&rows[1..], &rest, u);
            }
            acc
        }

        fn photon_list(occ: &Occupation) -> Vec<usize> {
            occ.iter()
                .enumerate()
                .flat_map(|(i, &n)| std::iter::repeat_n(i, n as usize))
                .collect()
        }

        pub fn amplitude(input: &FockState, out: &Occupation, u: &[[C64; MODES]; MODES]) -> C64 {
            let rows = photon_list(out);
            input
                .branches()
                .iter()
                .filter(|(occ, _)| photon_list(occ).len() == rows.len())
                .map(|(occ, amp)| {
                    let cols = photon_list(occ);
                    amp * permanent(&rows, &cols, u) / (bosonic_weight(occ) * bosonic_weight(out))
                })
                .sum()
        }
    }

    fn single(s: Spatial, p: Polarization) -> FockState {
        FockState::from_branches([(occ_of(&[(s, p, 1)]), C64::new(1.0, 0.0))]).unwrap()
    }

    #[test]
    fn source_has_three_equal_branches() {
        let src = spdc_second_order(SourceWeighting::AsWritten);
        assert_eq!(src.branches().len(), 3);
        for a in src.branches().values() {
            assert!((a.re - 1.0 / 3f64.sqrt()).abs() < 1e-15 && a.im == 0.0);
        }
        assert!(src.photon_numbers().iter().all(|&n| n == 4));
        assert!((src.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn squared_emission_operator_expansion() {
        // (aH bV + aV bH)^2 |0> = 2(|2H,2V> + |2V,2H> + |HV,HV>): equal weights
        let emitted = spdc_second_order(SourceWeighting::Emission {
            relative_phase: 0.0,
        });
        let written = spdc_second_order(SourceWeighting::AsWritten);
        assert_eq!(emitted.branches().len(), 3);
        for (occ, a) in written.branches() {
            assert!((emitted.branches()[occ] - a).norm() < 1e-12);
        }
        // a π relative phase flips only the |HV,HV> branch
        let flipped = spdc_second_order(SourceWeighting::Emission {
            relative_phase: std::f64::consts::PI,
        });
        let mixed = occ_of(&[(A, H, 1), (A, V, 1), (B, H, 1), (B, V, 1)]);
        assert!((flipped.branches()[&mixed] + written.branches()[&mixed]).norm() < 1e-12);
    }

    #[test]
    fn half_wave_plate_makes_plus() {
        let out = single(B, H)
            .apply_element(&OpticalElement::Hwp {
                mode: B,
                angle_deg: 22.5,
            })
            .unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(out.branches().len(), 2);
        assert!((out.branches()[&occ_of(&[(B, H, 1)])] - r).norm() < 1e-15);
        assert!((out.branches()[&occ_of(&[(B, V, 1)])] - r).norm() < 1e-15);
        let minus = single(B, V)
            .apply_element(&OpticalElement::Hwp {
                mode: B,
                angle_deg: 22.5,
            })
            .unwrap();
        assert!((minus.branches()[&occ_of(&[(B, V, 1)])] + r).norm() < 1e-15);
    }

    #[test]
    fn pbs_routes_h_through_and_v_across() {
        let input =
            FockState::from_branches([(occ_of(&[(A, H, 1), (B, V, 1)]), C64::new(1.0, 0.0))])
                .unwrap();
        let out = input
            .apply_element(&OpticalElement::Pbs {
                inputs: [A, B],
                outputs: [Out1, Out3],
            })
            .unwrap();
        assert_eq!(out.branches().len(), 1);
        let (occ, amp) = out.branches().iter().next().unwrap();
        assert_eq!(*occ, occ_of(&[(Out1, H, 1), (Out1, V, 1)]));
        assert!((amp - 1.0).norm() < 1e-15);
    }

    #[test]
    fn elements_preserve_norm_and_photon_number() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let elements = [
            OpticalElement::Bs {
                inputs: [Out1, Out2],
                outputs: [Out1, Out2],
            },
            OpticalElement::Hwp {
                mode: Out1,
                angle_deg: 17.0,
            },
            OpticalElement::Pbs {
                inputs: [Out1, Out2],
                outputs: [Out2, Out1],
            },
        ];
        for _ in 0..50 {
            // random two-photon superposition over modes 1 and 2
            let mut branches = Vec::new();
            for _ in 0..4 {
                let m1 = ModeLabel::new(
                    [Out1, Out2][rng.random_range(0..2)],
                    [H, V][rng.random_range(0..2)],
                );
                let m2 = ModeLabel::new(
                    [Out1, Out2][rng.random_range(0..2)],
                    [H, V][rng.random_range(0..2)],
                );
                let mut occ = [0; MODES];
                occ[m1.index()] += 1;
                occ[m2.index()] += 1;
                branches.push((
                    occ,
                    C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5),
                ));
            }
            let mut st = FockState::from_branches(branches).unwrap();
            st.normalize().unwrap();
            for e in &elements {
                let out = st.apply_element(e).unwrap();
                assert!((out.norm() - 1.0).abs() < 1e-10, "{e:?}");
                assert!(out.photon_numbers().iter().all(|&n| n == 2));
            }
        }
    }

    #[test]
    fn ghz_chain_postselects_ghz_zero() {
        for weighting in [
            SourceWeighting::AsWritten,
            SourceWeighting::Emission {
                relative_phase: 0.0,
            },
        ] {
            let out = spdc_second_order(weighting)
                .apply_chain(&ghz_chain())
                .unwrap();
            let ps = postselect_one_per_mode(&out).unwrap();
            let ghz = StateVector::ghz(4, 0.0).unwrap();
            let fid = ghz.inner_product(&ps.state).unwrap().norm_sqr();
            assert!(fid >= 1.0 - 1e-10, "fidelity {fid}");
            // 1/24, from an independent expansion of the same chain
            assert!((ps.success_probability - 1.0 / 24.0).abs() < 1e-12);
        }
    }

    #[test]
    fn success_probability_matches_permanent_oracle() {
        let src = spdc_second_order(SourceWeighting::AsWritten);
        let u = permanent_oracle::compose(&ghz_chain());
        let mut p = 0.0;
        for k in 0..16usize {
            let mut occ = [0; MODES];
            for (q, &s) in Spatial::DETECTORS.iter().enumerate() {
                let pol = if (k >> q) & 1 == 1 { V } else { H };
                occ[ModeLabel::new(s, pol).index()] = 1;
            }
            p += permanent_oracle::amplitude(&src, &occ, &u).norm_sqr();
        }
        let ps = postselect_one_per_mode(&src.apply_chain(&ghz_chain()).unwrap()).unwrap();
        assert!(
            (ps.success_probability - p).abs() < 1e-10,
            "{} vs {p}",
            ps.success_probability
        );
    }

    #[test]
    fn swapping_beam_splitter_outputs_keeps_ghz() {
        let mut chain = ghz_chain();
        chain[2] = OpticalElement::Bs {
            inputs: [Out1, Out2],
            outputs: [Out2, Out1],
        };
        chain[3] = OpticalElement::Bs {
            inputs: [Out3, Out4],
            outputs: [Out4, Out3],
        };
        let ps = postselect_one_per_mode(
            &spdc_second_order(SourceWeighting::AsWritten)
                .apply_chain(&chain)
                .unwrap(),
        )
        .unwrap();
        let fid = StateVector::ghz(4, 0.0)
            .unwrap()
            .inner_product(&ps.state)
            .unwrap()
            .norm_sqr();
        assert!(fid >= 1.0 - 1e-10);
    }

    #[test]
    fn empty_postselection_and_occupied_outputs() {
        let doubled =
            FockState::from_branches([(occ_of(&[(Out1, H, 2)]), C64::new(1.0, 0.0))]).unwrap();
        assert!(matches!(
            postselect_one_per_mode(&doubled),
            Err(Error::EmptyPostSelection)
        ));
        let st =
            FockState::from_branches([(occ_of(&[(A, H, 1), (Out1, V, 1)]), C64::new(1.0, 0.0))])
                .unwrap();
        let pbs = OpticalElement::Pbs {
            inputs: [A, B],
            outputs: [Out1, Out3],
        };
        assert!(matches!(
            st.apply_element(&pbs),
            Err(Error::OccupiedOutput(_))
        ));
        assert!(FockState::from_branches([(occ_of(&[(A, H, 5)]), C64::new(1.0, 0.0))]).is_err());
    }

    #[test]
    fn element_json_shape() {
        let json = serde_json::to_string(&ghz_chain()[1]).unwrap();
        assert_eq!(
            json,
            r#"{"element":"pbs","inputs":["a","b"],"outputs":["1","3"]}"#
        );
        let back: OpticalElement =
            serde_json::from_str(r#"{"element":"hwp","mode":"b","angle_deg":22.5}"#).unwrap();
        assert_eq!(back, ghz_chain()[0]);
    }
}
