//! Explicit matrix realizations of the three families over small finite
//! fields, with samplers for the Borel, Levi, unipotent radicals and the
//! zip group, and exact verification of the determinantal partial Hasse
//! invariants.
//!
//! Everything is sampled over an extension F_{q^e} of the base field
//! (e = 2 by default) so that the q-power Frobenius acts nontrivially on
//! matrix entries; all verified identities are polynomial, so holding on
//! extension points is the same exactness.

use crate::fq::{FqCtx, FqElem};
use crate::fqmat::FqMatrix;
use crate::root::{prime_power, Character, Family, RootDatum};
use crate::weyl::WeylElt;
use crate::zip::{build_zip_datum, levi_from_cocharacter, signature_cocharacter, ZipDatum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

/// Deterministic per-sample stream: every sample of a suite draws from a
/// generator derived from (seed, stream index), so parallel and serial
/// runs agree.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub samples_used: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    pub inconclusive: usize,
}

impl SuiteReport {
    fn ok(suite: impl Into<String>, samples: usize) -> SuiteReport {
        SuiteReport {
            suite: suite.into(),
            pass: true,
            samples_used: samples,
            counterexample: None,
            inconclusive: 0,
        }
    }

    fn fail(suite: impl Into<String>, samples: usize, witness: String) -> SuiteReport {
        SuiteReport {
            suite: suite.into(),
            pass: false,
            samples_used: samples,
            counterexample: Some(witness),
            inconclusive: 0,
        }
    }
}

/// Top-right d x d minor: rows 1..d against columns n+1-d..n.
pub fn delta_minor(ctx: &FqCtx, m: &FqMatrix, d: usize) -> FqElem {
    assert!(d >= 1 && d <= m.cols && d <= m.rows, "minor size out of range");
    let rows: Vec<usize> = (0..d).collect();
    let cols: Vec<usize> = (m.cols - d..m.cols).collect();
    m.minor(ctx, &rows, &cols)
}

/// A matrix model of one family: group elements are dim x dim matrices
/// over F_{q^e}.
pub struct GroupRealization {
    pub family: Family,
    pub n: usize,
    pub r: usize,
    pub s: usize,
    /// Base field size q (the Frobenius twist power).
    pub q: u64,
    /// Field the samples live in: F_{q^ext}.
    pub ctx: FqCtx,
    pub ext: usize,
    pub dim: usize,
    pub zd: ZipDatum,
    pub z_rep: FqMatrix,
    z_rep_inv: FqMatrix,
    simple_pos: Vec<FqMatrix>,
    simple_neg: Vec<FqMatrix>,
}

impl GroupRealization {
    pub fn new(
        family: Family,
        n: usize,
        signature: Option<(usize, usize)>,
        q: u64,
        ext: Option<usize>,
    ) -> GroupRealization {
        let ext = ext.unwrap_or(2);
        if family == Family::UInert {
            assert!(ext.is_multiple_of(2), "inert realization needs an even extension degree");
        }
        let (p, k) = prime_power(q).expect("q must be a prime power");
        let kk = k as usize * ext;
        assert!(kk <= crate::fq::MAX_EXT_DEGREE, "field extension too large to realize");
        let ctx = FqCtx::new(p, kk);

        let datum = RootDatum::build_classical(family, n, q, signature).unwrap();
        let mu = signature_cocharacter(&datum);
        let levi = levi_from_cocharacter(&datum, &mu);
        let zd = build_zip_datum(&datum, &levi);
        let (r, s) = signature.unwrap_or((n, 0));
        let dim = if family == Family::SpSplit { 2 * n } else { n };

        // Root-group matrices u_{+-alpha}(1) for the simple roots; the
        // reflection representatives are s = u_a(1) u_{-a}(-1) u_a(1).
        let mut simple_pos = Vec::new();
        let mut simple_neg = Vec::new();
        for i in 0..datum.simple_roots.len() {
            let (pos, neg) = match family {
                Family::GlSplit | Family::UInert => {
                    let mut up = FqMatrix::identity(&ctx, dim);
                    up[(i, i + 1)] = ctx.one();
                    let mut dn = FqMatrix::identity(&ctx, dim);
                    dn[(i + 1, i)] = ctx.one();
                    (up, dn)
                }
                Family::SpSplit => {
                    if i + 1 < datum.simple_roots.len() {
                        // Short root e_i - e_{i+1}.
                        let mut up = FqMatrix::identity(&ctx, dim);
                        up[(i, i + 1)] = ctx.one();
                        up[(2 * n - i - 2, 2 * n - i - 1)] = ctx.neg(&ctx.one());
                        let mut dn = FqMatrix::identity(&ctx, dim);
                        dn[(i + 1, i)] = ctx.one();
                        dn[(2 * n - i - 1, 2 * n - i - 2)] = ctx.neg(&ctx.one());
                        (up, dn)
                    } else {
                        // Long root 2 e_n.
                        let mut up = FqMatrix::identity(&ctx, dim);
                        up[(n - 1, n)] = ctx.one();
                        let mut dn = FqMatrix::identity(&ctx, dim);
                        dn[(n, n - 1)] = ctx.one();
                        (up, dn)
                    }
                }
            };
            simple_pos.push(pos);
            simple_neg.push(neg);
        }

        let placeholder = FqMatrix::identity(&ctx, dim);
        let mut rz = GroupRealization {
            family,
            n,
            r,
            s,
            q,
            ctx,
            ext,
            dim,
            zd,
            z_rep: placeholder.clone(),
            z_rep_inv: placeholder,
            simple_pos,
            simple_neg,
        };
        rz.z_rep = rz.weyl_rep(&rz.zd.z.clone());
        rz.z_rep_inv = rz.z_rep.inv(&rz.ctx).unwrap();
        rz
    }

    /// Representative of a simple reflection.
    pub fn reflection_rep(&self, i: usize) -> FqMatrix {
        let c = &self.ctx;
        let up = &self.simple_pos[i];
        let mut dn = FqMatrix::identity(c, self.dim);
        // u_{-alpha}(-1): negate the off-diagonal entries of the stored
        // u_{-alpha}(1).
        for a in 0..self.dim {
            for b in 0..self.dim {
                if a != b {
                    dn[(a, b)] = c.neg(&self.simple_neg[i][(a, b)]);
                }
            }
        }
        up.mul(c, &dn).mul(c, up)
    }

    /// Representative of a Weyl element along its reduced word.
    pub fn weyl_rep(&self, w: &WeylElt) -> FqMatrix {
        let mut m = FqMatrix::identity(&self.ctx, self.dim);
        for &i in &w.word {
            m = m.mul(&self.ctx, &self.reflection_rep(i));
        }
        m
    }

    /// The point whose zip orbit is indexed by w: the representative of w
    /// times the inverse of the frame representative.
    pub fn zip_point(&self, w: &WeylElt) -> FqMatrix {
        self.weyl_rep(w).mul(&self.ctx, &self.z_rep_inv)
    }

    /// The q-power group endomorphism phi.
    pub fn phi(&self, a: &FqMatrix) -> FqMatrix {
        let c = &self.ctx;
        match self.family {
            Family::GlSplit | Family::SpSplit => a.frobenius(c, self.q),
            Family::UInert => {
                // A -> J t(A^(q))^{-1} J.
                let aq = a.frobenius(c, self.q);
                let inv_t = aq.inv(c).expect("phi needs an invertible argument").transpose(c);
                let j = self.antidiag();
                j.mul(c, &inv_t).mul(c, &j)
            }
        }
    }

    fn antidiag(&self) -> FqMatrix {
        let c = &self.ctx;
        FqMatrix::from_fn(c, self.n, self.n, |i, j| {
            if i + j == self.n - 1 {
                c.one()
            } else {
                c.zero()
            }
        })
    }

    /// Block sizes of P (block lower) and Q (block upper).
    fn p_blocks(&self) -> (usize, usize) {
        match self.family {
            Family::SpSplit => (self.n, self.n),
            _ => (self.r, self.s),
        }
    }

    fn q_blocks(&self) -> (usize, usize) {
        match self.family {
            Family::SpSplit => (self.n, self.n),
            Family::GlSplit => (self.r, self.s),
            Family::UInert => (self.s, self.r),
        }
    }

    // ---- samplers ------------------------------------------------------

    fn random_gl<R: Rng>(&self, n: usize, rng: &mut R) -> FqMatrix {
        FqMatrix::random_invertible(&self.ctx, n, rng)
    }

    fn random_lower_triangular<R: Rng>(&self, n: usize, rng: &mut R) -> FqMatrix {
        let c = &self.ctx;
        let mut m = FqMatrix::zero(c, n, n);
        for i in 0..n {
            for j in 0..i {
                m[(i, j)] = c.random(rng);
            }
            m[(i, i)] = c.random_nonzero(rng);
        }
        m
    }

    /// Embeds an n x n invertible matrix as a Levi element: for Sp this is
    /// diag(A, J tA^{-1} J); for GL/U the argument is already the block
    /// pair assembled by the caller.
    fn sp_levi_embed(&self, a: &FqMatrix) -> FqMatrix {
        let c = &self.ctx;
        let n = self.n;
        let j = self.antidiag();
        let dual = j.mul(c, &a.inv(c).unwrap().transpose(c)).mul(c, &j);
        let mut m = FqMatrix::zero(c, 2 * n, 2 * n);
        for i in 0..n {
            for k in 0..n {
                m[(i, k)] = a[(i, k)];
                m[(n + i, n + k)] = dual[(i, k)];
            }
        }
        m
    }

    pub fn sample_levi<R: Rng>(&self, rng: &mut R) -> FqMatrix {
        let c = &self.ctx;
        match self.family {
            Family::SpSplit => {
                let a = self.random_gl(self.n, rng);
                self.sp_levi_embed(&a)
            }
            Family::GlSplit | Family::UInert => {
                let a = self.random_gl(self.r, rng);
                let b = self.random_gl(self.s, rng);
                let mut m = FqMatrix::zero(c, self.n, self.n);
                for i in 0..self.r {
                    for k in 0..self.r {
                        m[(i, k)] = a[(i, k)];
                    }
                }
                for i in 0..self.s {
                    for k in 0..self.s {
                        m[(self.r + i, self.r + k)] = b[(i, k)];
                    }
                }
                m
            }
        }
    }

    fn random_symmetric<R: Rng>(&self, n: usize, rng: &mut R) -> FqMatrix {
        let c = &self.ctx;
        let mut m = FqMatrix::zero(c, n, n);
        for i in 0..n {
            for j in 0..=i {
                let x = c.random(rng);
                m[(i, j)] = x;
                m[(j, i)] = x;
            }
        }
        m
    }

    /// Unipotent radical of P: block lower unipotent; for Sp the lower-left
    /// block is J S with S symmetric so the symplectic form is preserved.
    pub fn sample_ru_p<R: Rng>(&self, rng: &mut R) -> FqMatrix {
        let c = &self.ctx;
        let (b1, _b2) = self.p_blocks();
        let mut m = FqMatrix::identity(c, self.dim);
        match self.family {
            Family::SpSplit => {
                let s = self.random_symmetric(self.n, rng);
                let j = self.antidiag();
                let low = j.mul(c, &s);
                for i in 0..self.n {
                    for k in 0..self.n {
                        m[(self.n + i, k)] = low[(i, k)];
                    }
                }
            }
            _ => {
                for i in b1..self.dim {
                    for k in 0..b1 {
                        m[(i, k)] = c.random(rng);
                    }
                }
            }
        }
        m
    }

    /// Unipotent radical of Q: block upper unipotent (J S block for Sp).
    pub fn sample_ru_q<R: Rng>(&self, rng: &mut R) -> FqMatrix {
        let c = &self.ctx;
        let (b1, _b2) = self.q_blocks();
        let mut m = FqMatrix::identity(c, self.dim);
        match self.family {
            Family::SpSplit => {
                let s = self.random_symmetric(self.n, rng);
                let j = self.antidiag();
                let up = j.mul(c, &s);
                for i in 0..self.n {
                    for k in 0..self.n {
                        m[(i, self.n + k)] = up[(i, k)];
                    }
                }
            }
            _ => {
                for i in 0..b1 {
                    for k in b1..self.dim {
                        m[(i, k)] = c.random(rng);
                    }
                }
            }
        }
        m
    }

    /// Lower-triangular Borel sample: Levi Borel times R_u(P).
    pub fn sample_borel<R: Rng>(&self, rng: &mut R) -> FqMatrix {
        let c = &self.ctx;
        match self.family {
            Family::SpSplit => {
                let a = self.random_lower_triangular(self.n, rng);
                self.sp_levi_embed(&a).mul(c, &self.sample_ru_p(rng))
            }
            _ => self.random_lower_triangular(self.n, rng),
        }
    }

    pub fn sample_torus<R: Rng>(&self, rng: &mut R) -> FqMatrix {
        let c = &self.ctx;
        let mut m = FqMatrix::identity(c, self.dim);
        match self.family {
            Family::SpSplit => {
                for i in 0..self.n {
                    let x = c.random_nonzero(rng);
                    m[(i, i)] = x;
                    m[(2 * self.n - 1 - i, 2 * self.n - 1 - i)] = c.inv(&x).unwrap();
                }
            }
            _ => {
                for i in 0..self.n {
                    m[(i, i)] = c.random_nonzero(rng);
                }
            }
        }
        m
    }

    /// A group element hitting all Bruhat cells: b1 * (random word) * b2.
    pub fn sample_group<R: Rng>(&self, rng: &mut R) -> FqMatrix {
        let c = &self.ctx;
        let gens = self.simple_pos.len();
        let len = rng.gen_range(0..=self.zd.w0.length());
        let mut w = FqMatrix::identity(c, self.dim);
        for _ in 0..len {
            let i = rng.gen_range(0..gens);
            w = w.mul(c, &self.reflection_rep(i));
        }
        self.sample_borel(rng).mul(c, &w).mul(c, &self.sample_borel(rng))
    }

    /// Levi factor of an element of P (or of Q with `q_side`): the block
    /// diagonal part.
    pub fn levi_part(&self, x: &FqMatrix, q_side: bool) -> FqMatrix {
        let c = &self.ctx;
        let (b1, _) = if q_side { self.q_blocks() } else { self.p_blocks() };
        let mut m = FqMatrix::zero(c, self.dim, self.dim);
        for i in 0..self.dim {
            for k in 0..self.dim {
                if (i < b1) == (k < b1) {
                    m[(i, k)] = x[(i, k)];
                }
            }
        }
        m
    }

    /// Draws (x, y) in the zip group: x = l u, y = phi(l) u'. The defining
    /// equation phi(theta_P(x)) = theta_Q(y) is re-verified exactly.
    pub fn sample_e_pair<R: Rng>(&self, rng: &mut R) -> (FqMatrix, FqMatrix) {
        let c = &self.ctx;
        let l = self.sample_levi(rng);
        let x = l.mul(c, &self.sample_ru_p(rng));
        let y = self.phi(&l).mul(c, &self.sample_ru_q(rng));
        let lhs = self.phi(&self.levi_part(&x, false));
        let rhs = self.levi_part(&y, true);
        assert_eq!(lhs, rhs, "zip-group equation violated by sampler");
        (x, y)
    }

    // ---- the determinantal sections ------------------------------------

    /// Schubert-stack level function: Delta_d for GL/U; for Sp the top-left
    /// block of x z^{-1}.
    pub fn sbt_delta(&self, x: &FqMatrix, d: usize) -> FqElem {
        let c = &self.ctx;
        match self.family {
            Family::GlSplit | Family::UInert => delta_minor(c, x, d),
            Family::SpSplit => {
                let y = x.mul(c, &self.z_rep_inv);
                let a = FqMatrix::from_fn(c, self.n, self.n, |i, j| y[(i, j)]);
                delta_minor(c, &a, d)
            }
        }
    }

    /// Flag partial Hasse invariant: Delta_d(g z) for GL/U, the top-left
    /// block minor for Sp.
    pub fn hasse_flag(&self, g: &FqMatrix, d: usize) -> FqElem {
        self.sbt_delta(&g.mul(&self.ctx, &self.z_rep), d)
    }

    /// The mu-ordinary Hasse invariant on the zip stack.
    pub fn hasse_mu(&self, g: &FqMatrix) -> FqElem {
        let c = &self.ctx;
        match self.family {
            Family::SpSplit => {
                let a = FqMatrix::from_fn(c, self.n, self.n, |i, j| g[(i, j)]);
                a.det(c)
            }
            Family::GlSplit => self.hasse_flag(g, self.r),
            Family::UInert => {
                // det of the composite Omega_1 -> Omega_0^(q) -> Omega_1^(q^2)
                // in the split model V|M1 = E0 A^{-1}, V|M0 = E1 (J tA J).
                let (r, s) = (self.r, self.s);
                let a_inv = g.inv(c).expect("group elements are invertible");
                let j = self.antidiag();
                let jaqj = j.mul(c, &g.frobenius(c, self.q).transpose(c)).mul(c, &j);
                // M1: rows s..n (Omega_0), cols r..n (Omega_1) of A^{-1}.
                let m1 = FqMatrix::from_fn(c, r, s, |i, k| a_inv[(s + i, r + k)]);
                // M2: rows r..n (Omega_1), cols s..n (Omega_0) of J tA^(q) J.
                let m2 = FqMatrix::from_fn(c, s, r, |i, k| jaqj[(r + i, s + k)]);
                // The sigma-twists live in the spaces, so the two linear
                // maps compose as a plain matrix product.
                m2.mul(c, &m1).det(c)
            }
        }
    }

    /// Pinned weight of hasse_mu as an E-eigenfunction (a character of L,
    /// constant on blocks); calibrated once against torus sampling and kept
    /// as a regression constant.
    pub fn hasse_mu_weight(&self) -> Character {
        let q = self.q as i64;
        match self.family {
            Family::SpSplit => Character(vec![-(q - 1); self.n]),
            Family::GlSplit => {
                let mut v = vec![0i64; self.n];
                for x in v.iter_mut().take(self.r) {
                    *x = 1 - q;
                }
                Character(v)
            }
            Family::UInert => {
                let mut v = vec![0i64; self.n];
                for x in v.iter_mut().skip(self.r) {
                    *x = q * q - 1;
                }
                Character(v)
            }
        }
    }

    /// Weight of det as an E-eigenfunction.
    pub fn det_weight(&self) -> Character {
        let q = self.q as i64;
        match self.family {
            Family::SpSplit => Character(vec![0; self.n]),
            Family::GlSplit => Character(vec![-(q - 1); self.n]),
            Family::UInert => Character(vec![q + 1; self.n]),
        }
    }

    // ---- character evaluation ------------------------------------------

    /// chi(b) for b in B, evaluated on the diagonal torus coordinates.
    pub fn eval_torus_char(&self, chi: &Character, b: &FqMatrix) -> FqElem {
        let c = &self.ctx;
        let mut acc = c.one();
        for i in 0..self.n {
            let x = b[(i, i)];
            let e = chi.0[i];
            let factor = if e >= 0 {
                c.pow(&x, e as u64)
            } else {
                c.pow(&c.inv(&x).expect("torus entries are units"), (-e) as u64)
            };
            acc = c.mul(&acc, &factor);
        }
        acc
    }

    /// lambda(x) for x in P with lambda a character of L (block-constant):
    /// det powers of the Levi blocks.
    pub fn eval_levi_char(&self, lambda: &Character, x: &FqMatrix) -> FqElem {
        let c = &self.ctx;
        let l = self.levi_part(&x.clone(), false);
        let powdet = |m: &FqMatrix, e: i64| -> FqElem {
            let d = m.det(c);
            if e >= 0 {
                c.pow(&d, e as u64)
            } else {
                c.pow(&c.inv(&d).expect("Levi blocks are invertible"), (-e) as u64)
            }
        };
        match self.family {
            Family::SpSplit => {
                assert!(lambda.0.iter().all(|&v| v == lambda.0[0]), "weight must factor through det");
                let a = FqMatrix::from_fn(c, self.n, self.n, |i, j| l[(i, j)]);
                powdet(&a, lambda.0[0])
            }
            _ => {
                let (r, s) = (self.r, self.s);
                assert!(lambda.0[..r].iter().all(|&v| v == lambda.0[0]));
                assert!(lambda.0[r..].iter().all(|&v| v == lambda.0[r.min(self.n - 1)]));
                let a = FqMatrix::from_fn(c, r, r, |i, j| l[(i, j)]);
                let b = FqMatrix::from_fn(c, s, s, |i, j| l[(r + i, r + j)]);
                let ea = lambda.0[0];
                let eb = if s > 0 { lambda.0[r] } else { 0 };
                c.mul(&powdet(&a, ea), &powdet(&b, eb))
            }
        }
    }

    // ---- verification suites -------------------------------------------

    /// Runs a per-sample check across independent RNG streams, in
    /// parallel; the report carries the first failing index, so parallel
    /// and serial runs agree.
    fn run_samples(
        &self,
        suite: &str,
        samples: usize,
        seed: u64,
        check: impl Fn(usize, &mut ChaCha12Rng) -> Result<(), String> + Sync,
    ) -> SuiteReport {
        use rayon::prelude::*;
        let first_fail = (0..samples)
            .into_par_iter()
            .filter_map(|i| {
                let mut rng = stream_rng(seed, i as u64);
                check(i, &mut rng).err().map(|e| (i, e))
            })
            .min_by_key(|(i, _)| *i);
        match first_fail {
            Some((i, e)) => SuiteReport::fail(suite, i + 1, format!("sample {i}: {e}")),
            None => SuiteReport::ok(suite, samples),
        }
    }

    /// Borel-pair eigenfunction test on the Schubert-stack level:
    /// f(b x b'^{-1}) = chi(b) nu(b') f(x), sampled exactly.
    pub fn verify_borel_eigen(
        &self,
        suite: &str,
        f: &(dyn Fn(&FqMatrix) -> FqElem + Sync),
        chi: &Character,
        nu: &Character,
        samples: usize,
        seed: u64,
    ) -> SuiteReport {
        let c = &self.ctx;
        self.run_samples(suite, samples, seed, |_i, rng| {
            let b = self.sample_borel(rng);
            let bp = self.sample_borel(rng);
            let x = self.sample_group(rng);
            let lhs = f(&b.mul(c, &x).mul(c, &bp.inv(c).unwrap()));
            let scale = c.mul(&self.eval_torus_char(chi, &b), &self.eval_torus_char(nu, &bp));
            let rhs = c.mul(&scale, &f(&x));
            if lhs != rhs {
                return Err(format!("{lhs:?} != {rhs:?}"));
            }
            Ok(())
        })
    }

    /// Zip-group eigenfunction test: f(x g y^{-1}) = lambda(x) f(g) over
    /// sampled pairs (x, y) in E.
    pub fn verify_zip_eigen(
        &self,
        suite: &str,
        f: &(dyn Fn(&FqMatrix) -> FqElem + Sync),
        lambda: &Character,
        samples: usize,
        seed: u64,
    ) -> SuiteReport {
        let c = &self.ctx;
        self.run_samples(suite, samples, seed, |_i, rng| {
            let (x, y) = self.sample_e_pair(rng);
            let g = self.sample_group(rng);
            let lhs = f(&x.mul(c, &g).mul(c, &y.inv(c).unwrap()));
            let rhs = c.mul(&self.eval_levi_char(lambda, &x), &f(&g));
            if lhs != rhs {
                return Err(format!("{lhs:?} != {rhs:?}"));
            }
            Ok(())
        })
    }

    /// E'-eigenfunction test for a flag section: pairs (a, b) in E with
    /// a in B act by the character lambda of T, i.e.
    /// f(a g b^{-1}) = lambda(a) f(g).
    pub fn verify_flag_eigen(
        &self,
        suite: &str,
        f: &dyn Fn(&FqMatrix) -> FqElem,
        lambda: &Character,
        samples: usize,
        seed: u64,
    ) -> SuiteReport {
        let c = &self.ctx;
        for i in 0..samples {
            let mut rng = stream_rng(seed, i as u64);
            let a = self.sample_borel(&mut rng);
            let b = self.phi(&self.levi_part(&a, false)).mul(c, &self.sample_ru_q(&mut rng));
            let g = self.sample_group(&mut rng);
            let lhs = f(&a.mul(c, &g).mul(c, &b.inv(c).unwrap()));
            let rhs = c.mul(&self.eval_torus_char(lambda, &a), &f(&g));
            if lhs != rhs {
                return SuiteReport::fail(suite, i + 1, format!("sample {i}: {lhs:?} != {rhs:?}"));
            }
        }
        SuiteReport::ok(suite, samples)
    }

    /// Vanishing pattern of Delta_d across the codimension-one Schubert
    /// cells B w0 s_alpha B: must vanish identically when <chi_d,
    /// alpha^vee> > 0 and admit a nonzero witness otherwise.
    pub fn verify_vanishing_pattern(&self, d: usize, samples: usize, seed: u64) -> SuiteReport {
        let c = &self.ctx;
        let datum = &self.zd.datum;
        let chi = self.chi_d(d);
        let suite = format!("vanishing.{}.n{}.d{}", self.family, self.n, d);
        let mut inconclusive = 0usize;
        for (ai, coroot) in datum.simple_coroots.iter().enumerate() {
            let mult = datum.pairing(&chi, coroot);
            // The codimension-one cell labeled alpha is B (s_alpha w0) B,
            // with s_alpha applied after w0.
            let w0s = datum.multiply(&datum.simple_reflection(ai), &self.zd.w0);
            let cell_rep = self.weyl_rep(&w0s);
            let mut witness_nonzero = false;
            for i in 0..samples {
                let mut rng = stream_rng(seed.wrapping_add(ai as u64 + 1), i as u64);
                let b = self.sample_borel(&mut rng);
                let bp = self.sample_borel(&mut rng);
                let x = b.mul(c, &cell_rep).mul(c, &bp);
                let v = self.sbt_delta(&x, d);
                if mult > 0 {
                    if !c.is_zero(&v) {
                        return SuiteReport::fail(
                            &suite,
                            i + 1,
                            format!("alpha {ai}: expected vanishing, got {v:?}"),
                        );
                    }
                } else if !c.is_zero(&v) {
                    witness_nonzero = true;
                }
            }
            if mult == 0 && !witness_nonzero {
                inconclusive += 1;
            }
        }
        let mut rep = SuiteReport::ok(&suite, samples);
        rep.inconclusive = inconclusive;
        rep.pass = inconclusive == 0;
        rep
    }

    /// chi_d = (1^d, 0^{n-d}).
    pub fn chi_d(&self, d: usize) -> Character {
        let mut v = vec![0i64; self.n];
        for x in v.iter_mut().take(d) {
            *x = 1;
        }
        Character(v)
    }

    /// minus w0 chi, the second member of the Borel eigenfunction pair.
    pub fn minus_w0_chi(&self, chi: &Character) -> Character {
        self.zd.datum.act_on_char(&self.zd.w0, chi).scale(-1)
    }

    /// Realizes the Schubert section of a dominant chi as a product of the
    /// Delta_d and a central determinant power. Fails when chi has a
    /// negative fundamental coordinate.
    pub fn schubert_realize(&self, chi: &Character) -> Result<SchubertFunction, NonDominant> {
        let datum = &self.zd.datum;
        if !datum.is_dominant(chi, &datum.all_simple()) {
            return Err(NonDominant);
        }
        let n = self.n;
        let mut powers = Vec::new();
        let mut central = 0i64;
        match self.family {
            Family::SpSplit => {
                for d in 1..=n {
                    let m = if d < n { chi.0[d - 1] - chi.0[d] } else { chi.0[n - 1] };
                    if m > 0 {
                        powers.push((d, m as u64));
                    }
                }
            }
            _ => {
                for d in 1..n {
                    let m = chi.0[d - 1] - chi.0[d];
                    if m > 0 {
                        powers.push((d, m as u64));
                    }
                }
                central = chi.0[n - 1];
            }
        }
        Ok(SchubertFunction { powers, central })
    }

    pub fn eval_schubert(&self, f: &SchubertFunction, x: &FqMatrix) -> FqElem {
        let c = &self.ctx;
        let mut acc = c.one();
        for &(d, m) in &f.powers {
            acc = c.mul(&acc, &c.pow(&self.sbt_delta(x, d), m));
        }
        if f.central != 0 {
            let det = match self.family {
                Family::SpSplit => c.one(),
                _ => x.det(c),
            };
            let factor = if f.central >= 0 {
                c.pow(&det, f.central as u64)
            } else {
                c.pow(&c.inv(&det).unwrap(), (-f.central) as u64)
            };
            acc = c.mul(&acc, &factor);
        }
        acc
    }

    /// Calibrates the zip weight of f by torus sampling: exponent of each
    /// coordinate character, as a residue mod q^ext - 1.
    pub fn calibrate_zip_weight(&self, f: &dyn Fn(&FqMatrix) -> FqElem) -> Vec<u64> {
        let c = &self.ctx;
        let g0 = FqMatrix::identity(c, self.dim);
        let base = f(&g0);
        assert!(!c.is_zero(&base), "calibration base point must be nonzero");
        let gen = c.multiplicative_generator();
        (0..self.n)
            .map(|i| {
                let mut t = FqMatrix::identity(c, self.dim);
                t[(i, i)] = gen;
                if self.family == Family::SpSplit {
                    t[(self.dim - 1 - i, self.dim - 1 - i)] = c.inv(&gen).unwrap();
                }
                let y = self.phi(&t);
                let moved = f(&t.mul(c, &g0).mul(c, &y.inv(c).unwrap()));
                let ratio = c.div(&moved, &base).unwrap();
                c.dlog(&gen, &ratio).expect("ratio lies in the cyclic group")
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonDominant;

impl std::fmt::Display for NonDominant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "character has a negative fundamental coordinate")
    }
}

impl std::error::Error for NonDominant {}

/// Product of Schubert-stack minors realizing h_chi.
#[derive(Debug, Clone)]
pub struct SchubertFunction {
    pub powers: Vec<(usize, u64)>,
    pub central: i64,
}

/// Left side of the ev_1(Ha_1) expansion: det(A) Delta_1(A^{-1} A^{(q)}).
pub fn ev1_lhs(ctx: &FqCtx, q: u64, a: &FqMatrix) -> FqElem {
    let inv = a.inv(ctx).expect("A must be invertible");
    let m = inv.mul(ctx, &a.frobenius(ctx, q));
    ctx.mul(&a.det(ctx), &delta_minor(ctx, &m, 1))
}

/// Right side: sum_i (-1)^i delta_i(A) a_{i,n}^q with delta_i the minor on
/// the rows other than i and the columns 2..n.
pub fn ev1_rhs(ctx: &FqCtx, q: u64, a: &FqMatrix) -> FqElem {
    let n = a.rows;
    let cols: Vec<usize> = (1..n).collect();
    let mut acc = ctx.zero();
    for i in 0..n {
        let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
        let minor = a.minor(ctx, &rows, &cols);
        let term = ctx.mul(&minor, &ctx.pow(&a[(i, n - 1)], q));
        // (-1)^i with i counted 1-based as in the displayed sum.
        acc = if (i + 1) % 2 == 0 { ctx.add(&acc, &term) } else { ctx.sub(&acc, &term) };
    }
    acc
}

/// Calibrates the global sign on one invertible sample, then checks the
/// identity on `samples` random invertible matrices over F_{q^2} (over F_q
/// itself the q-power is trivial on points and both sides collapse). The
/// calibrated sign is also reported.
pub fn verify_ev1_expansion(n: usize, q: u64, samples: usize, seed: u64) -> (SuiteReport, i64) {
    let (p, k) = prime_power(q).expect("q must be a prime power");
    let ctx = FqCtx::new(p, 2 * k as usize);
    let suite = format!("ev1.n{n}.q{q}");
    // Calibration draw: find a sample with nonzero sides.
    let mut sign = 0i64;
    for i in 0..1000u64 {
        let mut rng = stream_rng(seed ^ 0xca11b8, i);
        let a = FqMatrix::random_invertible(&ctx, n, &mut rng);
        let lhs = ev1_lhs(&ctx, q, &a);
        let rhs = ev1_rhs(&ctx, q, &a);
        if ctx.is_zero(&lhs) || ctx.is_zero(&rhs) {
            continue;
        }
        if lhs == rhs {
            sign = 1;
        } else if lhs == ctx.neg(&rhs) {
            sign = -1;
        } else {
            return (
                SuiteReport::fail(&suite, i as usize + 1, format!("calibration failed: {lhs:?} vs {rhs:?}")),
                0,
            );
        }
        break;
    }
    if sign == 0 {
        return (SuiteReport::fail(&suite, 0, "no usable calibration sample".into()), 0);
    }
    for i in 0..samples {
        let mut rng = stream_rng(seed, i as u64);
        let a = FqMatrix::random_invertible(&ctx, n, &mut rng);
        let lhs = ev1_lhs(&ctx, q, &a);
        let mut rhs = ev1_rhs(&ctx, q, &a);
        if sign < 0 {
            rhs = ctx.neg(&rhs);
        }
        if lhs != rhs {
            return (
                SuiteReport::fail(&suite, i + 1, format!("sample {i}: {lhs:?} != {rhs:?}")),
                sign,
            );
        }
    }
    (SuiteReport::ok(&suite, samples), sign)
}
