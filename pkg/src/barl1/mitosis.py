"""Mitosis embeddings and the certified primitive pipeline.

A mitosis of G is an injection i: G -> M with elements s, d of M such
that (writing x^y = y x y^{-1})

  (1) M is generated by i(G) together with {s, d},
  (2) i(g)^d = i(g) i(g)^s for every g,
  (3) i(g') commutes with i(g)^s for all g, g'.

For finite abelian G the builder realizes M = (G x G) x| <phi, psi>
with phi(a, b) = (a, ab), psi(a, b) = (b, a), i(g) = (g, e), s = psi,
d = phi.

The pipeline turns a degree-q boundary z over H, pushed through a
chain of maps H -> H' -> K -> G -> M, into an explicit primitive c'
over M with d(c') = (i o f)_* z and a certified l1 ratio.  All the
ingredients (splitting D, lifting E, the shuffle assembly, the
conjugation homotopy) are exact; the only searches are the l1-minimal
section fillings, and those return certificates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from . import l1opt, linalg
from .barcomplex import (Chain, DEFAULT_SIZE_CAP, boundary, l1_norm,
                         push_chain)
from .groups import (DirectProduct, Homomorphism, PermutationGroup,
                     SemidirectProduct, build_hom, compose_homs, conjugation,
                     diagonal_hom, is_abelian, pair_hom)
from .products import (TensorChain, aw, cross_tensor, tensor_boundary,
                       tensor_elementary, tensor_first_boundary,
                       tensor_norm, tensor_second_boundary, push_tensor,
                       xi_fill)


class MitosisError(Exception):
    """A mitosis axiom failed, or data refused on a failed report."""


class PipelineError(Exception):
    """An exact identity of the pipeline failed to hold."""


@dataclass
class MitosisData:
    source: object
    ambient: object
    inj: Homomorphism
    s: object
    d: object

    def conj_power(self, x, y):
        """x^y = y x y^{-1} in the ambient group."""
        M = self.ambient
        return M.mul(M.mul(y, x), M.inv(y))


@dataclass
class MitosisReport:
    ok: bool
    mode: str
    injective: bool
    split: bool
    commuting: bool
    generation: bool | None
    witnesses: dict = field(default_factory=dict)

    def failed_axioms(self) -> list[str]:
        out = []
        if not self.injective:
            out.append("injectivity")
        if not self.split:
            out.append("split relation i(g)^d = i(g) i(g)^s")
        if not self.commuting:
            out.append("commuting relation [i(g'), i(g)^s] = 1")
        if self.generation is False:
            out.append("generation of the ambient group")
        return out


def verify_mitosis(data: MitosisData, rng=None, samples=200) -> MitosisReport:
    """Check the three axioms; exhaustive when source and ambient are
    finite, sampled (generation skipped) otherwise."""
    G, M, i = data.source, data.ambient, data.inj
    s, d = data.s, data.d
    M.check_member(s)
    M.check_member(d)
    exhaustive = G.is_finite() and M.is_finite()
    witnesses = {}
    if exhaustive:
        els = G.elements()
    else:
        if rng is None:
            import random
            rng = random.Random(0)
        els = [G.sample(rng) for _ in range(max(2, samples // 10))]

    injective = True
    seen = {}
    for g in els:
        img = i(g)
        key = M.canonical_key(img)
        if key in seen and not G.eq(seen[key], g):
            injective = False
            witnesses["injectivity"] = (seen[key], g)
            break
        seen[key] = g

    split = True
    for g in els:
        ig = i(g)
        lhs = data.conj_power(ig, d)
        rhs = M.mul(ig, data.conj_power(ig, s))
        if not M.eq(lhs, rhs):
            split = False
            witnesses["split"] = g
            break

    commuting = True
    for g in els:
        igs = data.conj_power(i(g), s)
        for gp in els:
            igp = i(gp)
            if not M.eq(M.mul(igp, igs), M.mul(igs, igp)):
                commuting = False
                witnesses["commuting"] = (gp, g)
                break
        if not commuting:
            break

    generation = None
    if exhaustive:
        gens = [i(g) for g in G.elements()] + [s, d]
        seen_keys = {M.canonical_key(M.identity()): M.identity()}
        frontier = [M.identity()]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = M.mul(a, g)
                    k = M.canonical_key(b)
                    if k not in seen_keys:
                        seen_keys[k] = b
                        nxt.append(b)
            frontier = nxt
        generation = len(seen_keys) == M.order()
        if not generation:
            witnesses["generation"] = (len(seen_keys), M.order())

    ok = injective and split and commuting and generation is not False
    return MitosisReport(ok, "exhaustive" if exhaustive else "sampled",
                         injective, split, commuting, generation, witnesses)


def mitosis_of_finite_abelian(G, check=True) -> MitosisData:
    """M = (G x G) x| <phi, psi> for finite abelian G."""
    if not G.is_finite():
        raise MitosisError("the builder needs a finite group")
    ab, witness = is_abelian(G, witness=True)
    if not ab:
        raise MitosisError(
            "the builder needs an abelian group; %r and %r do not commute"
            % witness)
    B = DirectProduct((G, G))
    els = B.elements()
    index = {B.canonical_key(x): k for k, x in enumerate(els)}
    phi = tuple(index[B.canonical_key((a, G.mul(a, b)))] for a, b in els)
    psi = tuple(index[B.canonical_key((b, a))] for a, b in els)
    action = PermutationGroup(len(els), [phi, psi])
    M = SemidirectProduct(B, action, check=True)
    e = G.identity()
    aid = action.identity()
    inj = Homomorphism(G, M, lambda g: ((g, e), aid), name="mitosis-inj")
    data = MitosisData(G, M, inj, ((e, e), psi), ((e, e), phi))
    if check:
        report = verify_mitosis(data)
        if not report.ok:
            raise MitosisError("builder output failed verification: %s"
                               % ", ".join(report.failed_axioms()))
    return data


def mu_hom(data: MitosisData, report: MitosisReport | None = None) -> Homomorphism:
    """mu(g', g) = i(g') i(g)^s: a homomorphism G x G -> M exactly when
    the commuting axiom holds; refuses on a failed report."""
    if report is None:
        report = verify_mitosis(data)
    if not report.ok:
        raise MitosisError("mu refused: failed axioms: %s"
                           % ", ".join(report.failed_axioms()))
    G, M, i = data.source, data.ambient, data.inj
    P = DirectProduct((G, G))

    def fn(pair, _d=data, _M=M, _i=i):
        gp, g = pair
        return _M.mul(_i(gp), _d.conj_power(_i(g), _d.s))

    return build_hom(P, M, fn=fn, name="mu", check=True)


def theta(c: Chain, conj) -> Chain:
    """Conjugation homotopy with the conjugator inserted literally:

      theta(g_1,...,g_q) = sum_{j=1}^{q+1} (-1)^j
          (g_1,...,g_{j-1}, w, w^{-1} g_j w, ..., w^{-1} g_q w)

    satisfying d theta + theta d = id - (x -> w^{-1} x w)_* and
    |theta| <= q + 1.
    """
    G = c.group
    G.check_member(conj)
    w = conj
    wi = G.inv(w)
    out = {}
    for tup, r in c.coeffs.items():
        tail = tuple(G.mul(G.mul(wi, g), w) for g in tup)
        for j in range(1, len(tup) + 2):
            new = tup[:j - 1] + (w,) + tail[j - 1:]
            sign = -1 if j % 2 else 1
            s = out.get(new, Fraction(0)) + sign * r
            if s == 0:
                out.pop(new, None)
            else:
                out[new] = s
    res = Chain(G, c.degree + 1)
    res.coeffs = out
    return res


def theta_defect(c: Chain, conj) -> Chain:
    """d theta(c) + theta(dc) - (c - (w^{-1} . w)_* c); zero when the
    orientation convention holds."""
    G = c.group
    gamma = conjugation(G, conj, inverse=True)
    lhs = boundary(theta(c, conj))
    if c.degree >= 1:
        lhs = lhs + theta(boundary(c), conj)
    return lhs - (c - push_chain(gamma, c))


def check_theta_orientation(G, conj, rng=None) -> None:
    """Exact self-test pinning the homotopy direction; aborts loudly."""
    if rng is None:
        import random
        rng = random.Random(0)
    for degree in (1, 2):
        coeffs = {}
        for _ in range(3):
            tup = tuple(G.sample(rng) for _ in range(degree))
            coeffs[tup] = coeffs.get(tup, 0) + rng.randrange(1, 4)
        c = Chain(G, degree, coeffs)
        if not theta_defect(c, conj).is_zero():
            raise MitosisError(
                "conjugation homotopy orientation mismatch for conjugator %r"
                % (conj,))


def dmap(z: Chain) -> TensorChain:
    """D(z) = aw(diag_* z) - z (x) 1 - 1 (x) z, supported in the
    intermediate bidegrees; zero in degree 1."""
    if z.degree < 1:
        raise ValueError("dmap is defined in degree >= 1")
    G = z.group
    P = DirectProduct((G, G))
    t = aw(push_chain(diagonal_hom(G, P), z))
    one = Chain.single(G, ())
    t = t - tensor_elementary(z, one) - tensor_elementary(one, z)
    for p, q in t.bidegrees():
        if p == 0 or q == 0:
            raise PipelineError("dmap left mass in an outer bidegree (%d, %d)"
                                % (p, q))
    return t


def _block_decompose(block: TensorChain):
    """Minimal-length decomposition of one bidegree block into
    elementary tensors; both factor families span the block's column
    and row spaces, so they inherit any subspace membership."""
    GA, GB = block.groups
    ka, kb = GA.canonical_key, GB.canonical_key
    rows_basis = sorted({k[0] for k in block.coeffs},
                        key=lambda t: tuple(ka(x) for x in t))
    cols_basis = sorted({k[1] for k in block.coeffs},
                        key=lambda t: tuple(kb(x) for x in t))
    col_pos = {b: j for j, b in enumerate(cols_basis)}
    w = [[Fraction(0)] * len(cols_basis) for _ in rows_basis]
    for i, a in enumerate(rows_basis):
        for (aa, bb), r in block.coeffs.items():
            if aa == a:
                w[i][col_pos[bb]] = r
    pairs = []
    p = len(rows_basis[0]) if rows_basis else 0
    q = len(cols_basis[0]) if cols_basis else 0
    for colvec, rowvec in linalg.rank_factorization(w):
        u = Chain(GA, p, {rows_basis[i]: v for i, v in enumerate(colvec) if v})
        v = Chain(GB, q, {cols_basis[j]: r for j, r in enumerate(rowvec) if r})
        pairs.append((u, v))
    return pairs


@dataclass
class EmapResult:
    value: TensorChain
    kappa: Fraction
    section_certificates: list
    input_norm: Fraction
    output_norm: Fraction
    norm_bound_holds: bool


@dataclass
class PipelineConfig:
    """Maps H -phi-> H' -phi'-> K -psi-> G with a mitosis of G.

    phi and psi carry the section fillings (the empirical kappa), and
    H_k(phi'; Q) = 0 in intermediate degrees is what makes the lifted
    blocks fillable; a violation surfaces as a failed boundary
    membership check inside emap.
    """

    phi: Homomorphism
    phi_prime: Homomorphism
    psi: Homomorphism
    mitosis: MitosisData
    fill_cap: int = DEFAULT_SIZE_CAP
    check_input: bool = True
    _mu: Homomorphism | None = field(default=None, repr=False)
    _report: MitosisReport | None = field(default=None, repr=False)

    def __post_init__(self):
        if self.phi.target != self.phi_prime.source:
            raise ValueError("phi and phi' do not compose")
        if self.phi_prime.target != self.psi.source:
            raise ValueError("phi' and psi do not compose")
        if self.psi.target != self.mitosis.source:
            raise ValueError("psi does not land in the mitosis source")

    def f(self) -> Homomorphism:
        return compose_homs(self.psi, compose_homs(self.phi_prime, self.phi))

    def mu(self) -> Homomorphism:
        if self._mu is None:
            self._report = verify_mitosis(self.mitosis)
            self._mu = mu_hom(self.mitosis, self._report)
        return self._mu


def emap(x: TensorChain, cfg: PipelineConfig) -> EmapResult:
    """Certified lift: returns E(x) with d E(x) = (f (x) f)(x) for a
    boundary x in intermediate bidegrees, where f = psi o phi' o phi.

    The section maps S (over phi) and T (over psi) are realized per
    instance by l1-minimal fillings; each block of an intermediate
    tensor is decomposed into elementary tensors whose factors are
    checked to be boundaries before filling.
    """
    H = cfg.phi.source
    Hp = cfg.phi.target
    K = cfg.psi.source
    G = cfg.psi.target
    if x.groups != (H, H):
        raise ValueError("emap input must be a tensor chain over (H, H)")
    q = x.degree
    certs = []
    kappa = Fraction(0)

    def section(src_chain, hom, caps=cfg.fill_cap):
        nonlocal kappa
        w = push_chain(hom, src_chain)
        cert = l1opt.fill_min(w, cap=caps)
        certs.append(cert)
        if cert.ratio > kappa:
            kappa = cert.ratio
        return cert.c

    if x.is_zero():
        zero = TensorChain.zero((G, G), q + 1)
        return EmapResult(zero, Fraction(0), [], Fraction(0), Fraction(0), True)

    for p, r in x.bidegrees():
        if not 1 <= p <= q - 1:
            raise ValueError("emap input has an outer bidegree (%d, %d)" % (p, r))

    # (S (x) S)(id (x) d)(x), blockwise over boundary-factor decompositions
    nx = tensor_second_boundary(x)
    ssn = TensorChain.zero((Hp, Hp), q + 1)
    for p, r in nx.bidegrees():
        block = nx.component(p, r)
        if r == 0:
            # the second factor would land in the zero space of
            # degree-0 boundaries; x being a boundary forces this
            if not block.is_zero():
                raise PipelineError(
                    "(id (x) d)(x) has mass in bidegree (%d, 0)" % p)
            continue
        for u, v in _block_decompose(block):
            if not l1opt.is_boundary(u, cap=cfg.fill_cap) or \
                    not l1opt.is_boundary(v, cap=cfg.fill_cap):
                raise PipelineError(
                    "a factor of (id (x) d)(x) in bidegree (%d, %d) "
                    "is not a boundary" % (p, r))
            ssn = ssn + tensor_elementary(section(u, cfg.phi),
                                          section(v, cfg.phi))

    # U(x) = (phi (x) phi)(x) - d(SSN); both partial boundaries vanish
    u_t = push_tensor(cfg.phi, cfg.phi, x) - tensor_boundary(ssn)
    if not tensor_second_boundary(u_t).is_zero():
        raise PipelineError("(id (x) d) U(x) != 0")
    if not tensor_first_boundary(u_t).is_zero():
        raise PipelineError("(d (x) id) U(x) != 0")

    # (T (x) (psi - T d)) over (phi' (x) phi') U(x)
    v_t = push_tensor(cfg.phi_prime, cfg.phi_prime, u_t)
    tt = TensorChain.zero((G, G), q + 1)
    for p, r in v_t.bidegrees():
        block = v_t.component(p, r)
        for a, b in _block_decompose(block):
            if not l1opt.is_boundary(a, cap=cfg.fill_cap) or \
                    not l1opt.is_boundary(b, cap=cfg.fill_cap):
                raise PipelineError(
                    "a factor of (phi' (x) phi') U(x) in bidegree (%d, %d) "
                    "is not a boundary; is phi' rationally acyclic there?"
                    % (p, r))
            ta = section(a, cfg.psi)
            db = boundary(b)
            second = push_chain(cfg.psi, b)
            if not db.is_zero():
                second = second - section(db, cfg.psi)
            tt = tt + tensor_elementary(ta, second)

    g_hom = compose_homs(cfg.psi, cfg.phi_prime)
    value = push_tensor(g_hom, g_hom, ssn) + tt

    f = cfg.f()
    if tensor_boundary(value) != push_tensor(f, f, x):
        raise PipelineError("emap boundary identity d E(x) = (f (x) f)(x) failed")

    in_norm = tensor_norm(x)
    out_norm = tensor_norm(value)
    holds = out_norm <= e_bound(q, kappa) * in_norm
    return EmapResult(value, kappa, certs, in_norm, out_norm, holds)


@dataclass
class PipelineCertificate:
    """d(primitive) = target = (i o f)_* z, with |primitive| <= bound |z|."""

    z: Chain
    target: Chain
    primitive: Chain
    degree: int
    ratio: Fraction
    kappa: Fraction
    xi_ratio: Fraction
    bound: Fraction

    def verify(self) -> list[str]:
        """Re-check with chain arithmetic only; returns failed check names."""
        failures = []
        if boundary(self.primitive) != self.target:
            failures.append("boundary mismatch: d(c') != (i o f)_* z")
        nz = l1_norm(self.z)
        if nz == 0:
            if not self.primitive.is_zero():
                failures.append("zero input with nonzero primitive")
        elif self.ratio != l1_norm(self.primitive) / nz:
            failures.append("ratio mismatch")
        if self.bound != constant_c(self.degree, self.kappa, self.xi_ratio):
            failures.append("stated bound does not match the constant formula")
        if self.ratio > self.bound:
            failures.append("ratio exceeds the certified constant")
        return failures


def primitive_pipeline(z: Chain, cfg: PipelineConfig) -> PipelineCertificate:
    """Explicit primitive of (i o f)_* z over the mitosis ambient group.

    Assembles c' = theta((conj d)_* (i o f)_* z) - mu_*(E'(z)) where
    E'(z) = cross(E(D(z))) - (f x f)_* xi and checks d c' = (i o f)_* z
    exactly, then certifies |c'|/|z| against the constant from
    constant_c at the batch kappa and xi ratios.
    """
    H = cfg.phi.source
    q = z.degree
    if z.group != H:
        raise ValueError("z must live over the source group of phi")
    if q < 1:
        raise ValueError("the pipeline needs degree >= 1")
    M = cfg.mitosis.ambient
    i = cfg.mitosis.inj
    f = cfg.f()
    i_f = compose_homs(i, f)
    if z.is_zero():
        zero = Chain.zero(M, q + 1)
        return PipelineCertificate(z, Chain.zero(M, q), zero, q, Fraction(0),
                                   Fraction(0), Fraction(0),
                                   constant_c(q, 0, 0))
    if not boundary(z).is_zero():
        raise ValueError("z must be a cycle")
    if cfg.check_input and not l1opt.is_boundary(z, cap=cfg.fill_cap):
        raise ValueError("z is not a boundary over its group")
    G = cfg.psi.target

    xi_res = xi_fill(z, cap=cfg.fill_cap)
    dz = dmap(z)
    if dz.is_zero():
        e_res = None
        e_val = TensorChain.zero((G, G), q + 1)
        kappa = Fraction(0)
    else:
        e_res = emap(dz, cfg)
        e_val = e_res.value
        kappa = e_res.kappa

    GG = DirectProduct((G, G))
    HH = DirectProduct((H, H))
    bed = cross_tensor(e_val, product=GG)
    ff = pair_hom(f, f, source=HH, target=GG)
    e_prime = bed - push_chain(ff, xi_res.xi)

    w = push_chain(i_f, z)
    mu = cfg.mu()
    mu_e = push_chain(mu, e_prime)

    s, d = cfg.mitosis.s, cfg.mitosis.d
    conj = M.mul(d, M.inv(s))  # inserted conjugator; gamma_{s d^-1} overall
    check_theta_orientation(M, conj)
    wd = push_chain(conjugation(M, d), w)
    c_prime = theta(wd, conj) - mu_e

    if boundary(c_prime) != w:
        raise PipelineError("primitive boundary identity d c' = (i o f)_* z failed")
    ratio = l1_norm(c_prime) / l1_norm(z)
    bound = constant_c(q, kappa, xi_res.ratio_vs_input)
    if ratio > bound:
        raise PipelineError("observed ratio %s exceeds certified constant %s"
                            % (ratio, bound))
    return PipelineCertificate(z, w, c_prime, q, ratio, kappa,
                               xi_res.ratio_vs_input, bound)


def e_bound(q, kappa) -> Fraction:
    """Operator bound for the lift E at section norm kappa."""
    k = Fraction(kappa)
    n = q + 1
    return k + 2 * n * k ** 2 * (1 + n * k + n * n * k ** 2)


def constant_c(q, kappa, xi) -> Fraction:
    """Certified primitive ratio: theta term (q+1), shuffle assembly
    binom(q+1, floor((q+1)/2)) times the E bound times the D bound
    (q+3), plus the xi contribution."""
    return (Fraction(q + 1)
            + comb(q + 1, (q + 1) // 2) * e_bound(q, kappa) * (q + 3)
            + Fraction(xi))


@dataclass
class TowerRow:
    degree: int
    size: int
    kappa: Fraction
    theta_bound: int | None = None
    aw_bound: int | None = None
    shuffle_bound: int | None = None
    e_input: Fraction | None = None
    xi: Fraction | None = None


def tower(q_max, xi=None) -> list[TowerRow]:
    """Iterated constants: kappa_0 = 0, kappa_q = c(q, kappa_{q-1}, xi_q),
    with ambient sizes n_0 = 1, n_q = 3 n_{q-1} + 1."""
    if xi is None:
        xis = [Fraction(0)] * (q_max + 1)
    elif isinstance(xi, (int, Fraction)):
        xis = [Fraction(xi)] * (q_max + 1)
    else:
        xis = [Fraction(v) for v in xi]
        if len(xis) < q_max + 1:
            xis = xis + [Fraction(0)] * (q_max + 1 - len(xis))
    rows = [TowerRow(0, 1, Fraction(0))]
    kappa = Fraction(0)
    n = 1
    for q in range(1, q_max + 1):
        n = 3 * n + 1
        row = TowerRow(q, n, constant_c(q, kappa, xis[q]),
                       theta_bound=q + 1, aw_bound=q + 1,
                       shuffle_bound=comb(q + 1, (q + 1) // 2),
                       e_input=e_bound(q, kappa), xi=xis[q])
        kappa = row.kappa
        rows.append(row)
    return rows
