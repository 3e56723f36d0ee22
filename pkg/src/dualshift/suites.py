"""Verification suites: each check returns VerificationReports."""
from __future__ import annotations

import logging
from typing import Callable, Iterator

import mpmath
import numpy as np

from . import fourier as F
from .blaschke import BlaschkeProduct, value_at_zero
from .config import CampaignConfig
from .dual import (ambient_basis, bilateral_shift, block_compression_check, build_D, build_D_star,
                   build_dual_tt, conjugation_matrix, dense_D_oracle)
from .equivalence import (build_V, composite_check, conjugated_block_form,
                          decide_unitary_equivalence, flip_check, origin_branch)
from .linalg import mutual_residual, orthonormalize
from .model_space import (conjugation, default_band, kernel, project_model, tm_basis,
                          ubar_series, u_series)
from .report import VerificationReport, timed
from . import subspaces as SS

log = logging.getLogger("dualshift")

Params = dict


def _params(u: BlaschkeProduct, N: int | None = None, **kw) -> Params:
    out = {"u": u}
    if N is not None:
        out["N"] = N
    out.update(kw)
    return out


def random_vector(rng: np.random.Generator, lo: int, hi: int) -> F.FourierVector:
    n = hi - lo + 1
    c = (rng.standard_normal(n) + 1j * rng.standard_normal(n)) / np.sqrt(2 * n)
    return F.FourierVector(lo, hi, c)


def _maxabs(f: F.FourierVector, g: F.FourierVector) -> float:
    d = f - g
    return float(np.max(np.abs(d.coeffs))) if d.coeffs.size else 0.0


# -- projections -----------------------------------------------------------------

def projection_report(u, N, samples, rng, tol) -> VerificationReport:
    """Both closed-form projections onto K_u against the basis projection."""
    with timed() as t:
        worst = 0.0
        for _ in range(samples):
            f = random_vector(rng, -N // 2, N)
            bm = default_band(u, f.n_max)
            basis = tm_basis(u, bm)
            ref = project_model(u, f, "basis", band_max=bm, basis=basis)
            for m in ("formula", "formula_alt"):
                worst = max(worst, _maxabs(project_model(u, f, m, band_max=bm), ref))
    return VerificationReport("projections", _params(u, N, samples=samples), worst, tol,
                              runtime_ms=t[0])


def splitting_identities_report(N, samples, rng, tol) -> VerificationReport:
    """P^-(z f_-), P^-(zbar f_+), P^+(zbar f_+), P^+(z f_-) in closed form."""
    with timed() as t:
        parts = dict.fromkeys(("i", "ii", "iii", "iv"), 0.0)
        zbar = F.FourierVector.monomial(-1)
        for _ in range(samples):
            f = random_vector(rng, -N, N)
            fm, fp = F.project_minus(f), F.project_plus(f)
            p0 = F.phi_at_zero(f)
            lhs = F.project_minus(F.shift(fm))
            rhs = F.conjugate(F.phi_of(f)) - F.FourierVector.monomial(0, np.conj(p0))
            parts["i"] = max(parts["i"], _maxabs(lhs, rhs))
            lhs = F.project_minus(F.multiply(zbar, fp))
            parts["ii"] = max(parts["ii"], _maxabs(lhs, F.FourierVector.monomial(-1, fp.coeff(0))))
            lhs = F.project_plus(F.multiply(zbar, fp))
            parts["iii"] = max(parts["iii"], _maxabs(lhs, F.backshift_analytic(fp)))
            lhs = F.project_plus(F.shift(fm))
            parts["iv"] = max(parts["iv"], _maxabs(lhs, F.FourierVector.monomial(0, np.conj(p0))))
    return VerificationReport("splitting_identities", {"N": N, "samples": samples},
                              max(parts.values()), tol, runtime_ms=t[0], details=parts)


def suite_projections(cfg: CampaignConfig) -> Iterator[VerificationReport]:
    rng = np.random.default_rng(cfg.seed)
    yield splitting_identities_report(cfg.N, cfg.samples, rng, cfg.tol("splitting_identities"))
    for item in cfg.inner:
        yield projection_report(item.u, cfg.N, cfg.samples, rng, cfg.tol("projections"))


# -- model space -------------------------------------------------------------------

def model_basis_report(u, N, tol) -> VerificationReport:
    with timed() as t:
        bm = default_band(u, N)
        mb = tm_basis(u, bm)
        gram = float(np.max(np.abs(mb.gram() - np.eye(mb.dim)))) if mb.dim else 0.0
        uc = u_series(u, bm).window(0, bm)
        # u z^k for k = 0..bm - degree, truncated at bm
        cols = np.zeros((bm + 1, bm - u.degree + 1), dtype=complex)
        for k in range(cols.shape[1]):
            cols[k:, k] = uc[:bm + 1 - k]
        ortho = float(np.max(np.abs(mb.matrix().conj().T @ cols))) if mb.dim else 0.0
        dim_ok = mb.dim == u.degree
    res = max(gram, ortho) if dim_ok else np.inf
    return VerificationReport("model_basis", _params(u, band_max=bm), res, tol, runtime_ms=t[0],
                              details={"gram": gram, "orthogonality": ortho,
                                       "tail_bound": mb.tail_bound, "dim": mb.dim})


def reproducing_report(u, tol, lam=0.3 + 0.1j) -> VerificationReport:
    with timed() as t:
        mb = tm_basis(u)
        k = kernel(u, lam, mb.band_max).vector
        rep = max((abs(F.inner_product(e, k) - complex(F.evaluate(e, lam))) for e in mb.vectors),
                  default=0.0)
        span = k - project_model(u, k, "basis", basis=mb, band_max=mb.band_max)
        k0 = kernel(u, 0.0, mb.band_max).vector
        k0_ref = F.FourierVector.monomial(0) - u_series(u, mb.band_max) * np.conj(value_at_zero(u))
        k0_res = _maxabs(k0, k0_ref)
    res = max(rep, span.norm(), k0_res)
    return VerificationReport("reproducing_kernel", _params(u, lam=complex(lam)), res, tol,
                              runtime_ms=t[0], details={"reproducing": rep, "in_span": span.norm(),
                                                        "k0": k0_res})


def conjugation_report(u, N, rng, tol) -> VerificationReport:
    with timed() as t:
        mb = tm_basis(u)
        bm = mb.band_max
        preserve = 0.0
        for e in mb.vectors:
            c = conjugation(u, e, bm)
            preserve = max(preserve, (c - project_model(u, c, "formula", band_max=bm)).norm())
        iso = inv = 0.0
        for _ in range(10):
            f = random_vector(rng, -N // 2, N // 2)
            band = default_band(u, 2 * N)
            c = conjugation(u, f, band)
            iso = max(iso, abs(c.norm() - f.norm()))
            inv = max(inv, _maxabs(conjugation(u, c, band).resized(f.n_min, f.n_max), f))
        basis = ambient_basis(u, N)
        perp = 0.0
        for i in range(basis.dim):
            c = conjugation(u, basis.element(i), basis.band_max)
            perp = max(perp, project_model(u, c, "formula", band_max=basis.hi).norm())
    res = max(preserve, iso, inv, perp)
    return VerificationReport("conjugation", _params(u, N), res, tol, runtime_ms=t[0],
                              details={"preserves_model": preserve, "isometry": iso,
                                       "involution": inv, "preserves_complement": perp})


def ubar_model_report(u, tol) -> VerificationReport:
    """conj(u) K_u and zbar conj(K_u) span the same space."""
    with timed() as t:
        mb = tm_basis(u)
        bm = mb.band_max
        ub = ubar_series(u, bm)
        a = np.stack([F.multiply(ub, e).window(-bm - 1, bm) for e in mb.vectors], axis=1)
        b = np.stack([F.conjugate(F.shift(e)).window(-bm - 1, bm) for e in mb.vectors], axis=1)
        res = mutual_residual(orthonormalize(a), orthonormalize(b))
    return VerificationReport("ubar_model_space", _params(u), res, tol, runtime_ms=t[0])


def suite_model_space(cfg: CampaignConfig) -> Iterator[VerificationReport]:
    rng = np.random.default_rng(cfg.seed + 1)
    for item in cfg.inner:
        yield model_basis_report(item.u, cfg.N, cfg.tol("model_basis"))
        yield reproducing_report(item.u, cfg.tol("reproducing_kernel"))
        yield conjugation_report(item.u, cfg.N, rng, cfg.tol("conjugation"))
        yield ubar_model_report(item.u, cfg.tol("ubar_model_space"))


# -- dual operator -----------------------------------------------------------------

def dual_formula_report(u, N, guard, tol) -> VerificationReport:
    with timed() as t:
        basis = ambient_basis(u, N, band_guard=guard)
        d, o = build_D(basis), dense_D_oracle(basis)
        res = d.interior_residual(o)
        same_interior = set(d.interior_cols) == set(o.interior_cols)
    return VerificationReport("dual_formula", _params(u, N), res if same_interior else np.inf, tol,
                              runtime_ms=t[0], details={"gram": basis.gram_residual(),
                                                        "interior_sets_agree": same_interior})


def dual_tt_report(u, N, guard, tol) -> VerificationReport:
    """Dual truncated Toeplitz operators with symbols z and zbar reproduce D and D*."""
    with timed() as t:
        basis = ambient_basis(u, N, band_guard=guard)
        d, ds = build_D(basis), build_D_star(basis)
        tz = build_dual_tt(u, F.FourierVector.monomial(1), basis)
        tzb = build_dual_tt(u, F.FourierVector.monomial(-1), basis)
        r1, r2 = d.interior_residual(tz), ds.interior_residual(tzb)
        adj = float(np.max(np.abs(ds.entries - d.entries.conj().T)))
    return VerificationReport("dual_tt", _params(u, N), max(r1, r2, adj), tol, runtime_ms=t[0],
                              details={"symbol_z": r1, "symbol_zbar": r2, "adjoint": adj})


def suite_dual_formula(cfg: CampaignConfig) -> Iterator[VerificationReport]:
    for item in cfg.inner:
        yield dual_formula_report(item.u, cfg.N, cfg.band_guard, cfg.tol("dual_formula"))
        yield dual_tt_report(item.u, cfg.N, cfg.band_guard, cfg.tol("dual_tt"))
        yield block_compression_check(item.u, cfg.N, cfg.tol("block_compression"))


def defect_parts(u, N, guard=8) -> dict[str, float]:
    basis = ambient_basis(u, N, band_guard=guard)
    d = build_D(basis).entries
    ib = basis.interior_block()
    blk = np.ix_(ib, ib)
    u0 = value_at_zero(u)
    norm = abs(float(np.linalg.norm(d, 2)) - 1.0)
    e = np.zeros(basis.dim)
    e[basis.uz(0)] = 1.0
    target = np.eye(basis.dim) - (1 - abs(u0) ** 2) * np.outer(e, e)
    defect = float(np.max(np.abs((d @ d.conj().T - target)[blk])))
    c = conjugation_matrix(basis)
    cdc = c @ d.conj() @ c.conj()
    sym = float(np.max(np.abs((cdc - d.conj().T)[blk])))
    return {"norm": norm, "defect_identity": defect, "conjugation_symmetry": sym}


def defect_report(u, cfg: CampaignConfig) -> VerificationReport:
    """Norm, defect identity and conjugation symmetry of D_u in one report.

    Each part has its own tolerance; the reported residual is the worst part
    rescaled to the strictest tolerance, so it passes iff every part does.
    """
    with timed() as t:
        parts = defect_parts(u, cfg.N, cfg.band_guard)
    tols = {k: cfg.tol(k) for k in parts}
    ref = min(tols.values())
    res = max(parts[k] / tols[k] for k in parts) * ref
    details = {k: {"residual": parts[k], "tolerance": tols[k]} for k in parts}
    return VerificationReport("defect", _params(u, cfg.N), res, ref, runtime_ms=t[0],
                              details=details)


def suite_defect(cfg: CampaignConfig) -> Iterator[VerificationReport]:
    for item in cfg.inner:
        yield defect_report(item.u, cfg)


# -- block forms, flip, similarity ---------------------------------------------------

def suite_blocks(cfg: CampaignConfig) -> Iterator[VerificationReport]:
    for item in cfg.inner:
        yield conjugated_block_form(item.u, cfg.N, cfg.tol("block_form"))


def suite_flip(cfg: CampaignConfig) -> Iterator[VerificationReport]:
    yield flip_check(cfg.N, cfg.tol("flip"))
    for item in cfg.inner:
        if not origin_branch(item.u):
            yield composite_check(item.u, cfg.N, cfg.tol("composite_unitary"))


def commutator_norms(u, N) -> tuple[float, float]:
    """||D D* - D* D|| for D_u and for the bilateral shift, away from the truncation edges."""
    basis = ambient_basis(u, N)
    ib = basis.interior_block()
    d = build_D(basis).entries
    cd = (d @ d.conj().T - d.conj().T @ d)[np.ix_(ib, ib)]
    m = bilateral_shift(N).entries
    cm = (m @ m.conj().T - m.conj().T @ m)[np.ix_(ib, ib)]
    return float(np.linalg.norm(cd, 2)), float(np.linalg.norm(cm, 2))


def similarity_report(u, cfg: CampaignConfig) -> VerificationReport:
    with timed() as t:
        cert = build_V(ambient_basis(u, cfg.N, band_guard=cfg.band_guard))
    return VerificationReport("similarity", _params(u, cfg.N), cert.residual_intertwine,
                              cfg.tol("similarity"), runtime_ms=t[0],
                              details={"condition_number": cert.condition_number,
                                       "inverse_residual": cert.extra["inverse_residual"]})


def non_normality_report(u, cfg: CampaignConfig) -> VerificationReport:
    """D_u is not normal: its commutator is at least (1 - |u(0)|^2)/2 while M's vanishes."""
    with timed() as t:
        cd, cm = commutator_norms(u, cfg.N)
        bound = (1 - abs(value_at_zero(u)) ** 2) / 2
        shortfall = max(0.0, bound - cd)
    return VerificationReport("non_normality", _params(u, cfg.N), max(shortfall, cm),
                              cfg.tol("similarity"), runtime_ms=t[0],
                              details={"commutator_D": cd, "commutator_M": cm, "bound": bound})


def suite_similarity(cfg: CampaignConfig) -> Iterator[VerificationReport]:
    for item in cfg.inner:
        if origin_branch(item.u):
            yield similarity_report(item.u, cfg)
            yield non_normality_report(item.u, cfg)


# -- equivalence -------------------------------------------------------------------

def equivalence_report(u, v, cfg: CampaignConfig) -> VerificationReport:
    """A decision passes when its certificate or witness checks out."""
    with timed() as t:
        dec = decide_unitary_equivalence(u, v, cfg.N)
    cert = dec.certificate
    details = {"equivalent": dec.equivalent, "modulus_u": dec.modulus_u,
               "modulus_v": dec.modulus_v, "certificate": cert.to_dict() if cert else None,
               "witness": dec.witness}
    if cert is None:
        res, tol = dec.witness["residual"], cfg.tol("intertwine")
    elif cert.kind == "Unitary":
        res, tol = max(cert.residual_intertwine, cert.residual_unitarity), cfg.tol("unitary_certificate")
    else:
        a, b = dec.modulus_u, dec.modulus_v
        floor = 0.1 * abs(b * b / (a * a) - 1)
        res, tol = cert.residual_intertwine, cfg.tol("intertwine")
        if cert.residual_unitarity <= floor:
            res = np.inf
        details["unitarity_floor"] = floor
    return VerificationReport("equivalence", {"u": u, "v": v, "N": cfg.N}, res, tol,
                              runtime_ms=t[0], details=details)


def suite_equivalence(cfg: CampaignConfig) -> Iterator[VerificationReport]:
    specs = cfg.inner
    for i in range(len(specs)):
        for j in range(i + 1, len(specs)):
            yield equivalence_report(specs[i].u, specs[j].u, cfg)


# -- subspaces ----------------------------------------------------------------------

MOB3 = BlaschkeProduct.mobius(1 / 3)
ALPHA2 = BlaschkeProduct(1.0, (0.3, -0.4j))


def constructed_subspaces(basis) -> list[tuple[str, SS.SubspaceBasis]]:
    """Named invariant subspaces appropriate to the u(0) branch of ``basis.u``."""
    u = basis.u
    out = [("u_chain", SS.u_chain(basis)),
           ("gamma_u_h2[mobius(1/3)]", SS.subspace_gamma_uH2(MOB3, basis)),
           ("gamma_u_h2[z]", SS.subspace_gamma_uH2(BlaschkeProduct.power(1), basis))]
    if not origin_branch(u):
        out += [("h2_0_bar", SS.zbar_chain(basis)),
                ("zbar_conj_k[z2]", SS.subspace_zbar_conj_K(BlaschkeProduct.power(2), basis)),
                ("zbar_conj_k[{0.3,-0.4i}]", SS.subspace_zbar_conj_K(ALPHA2, basis)),
                ("zbar_conj_k+gamma_u_h2", SS.direct_sum(SS.subspace_zbar_conj_K(ALPHA2, basis),
                                                         SS.subspace_gamma_uH2(MOB3, basis)))]
    else:
        q = SS.QuotientInner
        out += [("pullback[1,mobius(1/3)]", SS.pullback_V_inv(u, q(BlaschkeProduct(), MOB3), basis)),
                ("pullback[mobius(0.3),1]", SS.pullback_V_inv(u, q(BlaschkeProduct.mobius(0.3),
                                                                   BlaschkeProduct()), basis)),
                ("pullback[mobius(0.3),mobius(-0.4i)]",
                 SS.pullback_V_inv(u, q(BlaschkeProduct.mobius(0.3),
                                        BlaschkeProduct.mobius(-0.4j)), basis)),
                ("pullback[{0.3,-0.4i},z]",
                 SS.pullback_V_inv(u, q(ALPHA2, BlaschkeProduct.power(1)), basis)),
                ("zbar_conj_k+u_h2", SS.direct_sum(SS.subspace_zbar_conj_K(ALPHA2, basis),
                                                   SS.u_chain(basis)))]
    return out


def split_cases(basis) -> list[tuple[str, SS.SubspaceBasis]]:
    """(expected tag, subspace) for split invariant subspaces in the branch of basis.u."""
    if not origin_branch(basis.u):
        g = SS.subspace_gamma_uH2(MOB3, basis)
        return [("gamma_u_h2", g),
                ("zbar_conj_k", SS.subspace_zbar_conj_K(ALPHA2, basis)),
                ("h2_0_bar", SS.zbar_chain(basis)),
                ("h2_0_bar_plus_gamma_u_h2", SS.direct_sum(SS.zbar_chain(basis), g)),
                ("zbar_conj_k_plus_gamma_u_h2",
                 SS.direct_sum(SS.subspace_zbar_conj_K(ALPHA2, basis), g))]
    return [("gamma_u_h2", SS.subspace_gamma_uH2(ALPHA2, basis)),
            ("zbar_conj_k_plus_gamma_u_h2",
             SS.direct_sum(SS.subspace_zbar_conj_K(ALPHA2, basis), SS.u_chain(basis))),
            ("h2_0_bar_plus_gamma_u_h2", SS.direct_sum(SS.zbar_chain(basis), SS.u_chain(basis)))]


def invariance_reports(u, cfg: CampaignConfig) -> Iterator[VerificationReport]:
    basis = ambient_basis(u, cfg.N, band_guard=cfg.band_guard)
    d = build_D(basis)
    for name, s in constructed_subspaces(basis):
        with timed() as t:
            res = SS.invariance_residual(d, s)
        yield VerificationReport("invariance", _params(u, cfg.N, subspace=name, dim=s.dim), res,
                                 cfg.tol("invariance"), runtime_ms=t[0])
    if origin_branch(u):
        arcs = SS.ArcUnion(((0.0, np.pi),))
        with timed() as t:
            s = SS.pullback_V_inv(u, SS.CharFn(arcs), basis)
            m = SS.charfn_edge_margin(cfg.N)
            res = SS.invariance_residual(d, s, edge_margin=m)
        yield VerificationReport("char_fn", _params(u, cfg.N, arcs=[[0.0, np.pi]], dim=s.dim),
                                 res, cfg.tol("char_fn"), runtime_ms=t[0],
                                 details={"approximate": True, "edge_margin": m})


def pullback_identity_report(u, cfg: CampaignConfig) -> VerificationReport:
    """Pullbacks with alpha = 1 or beta = 1 recover the explicitly described subspaces."""
    with timed() as t:
        basis = ambient_basis(u, cfg.N, band_guard=cfg.band_guard)
        q = SS.QuotientInner
        a = SS.pullback_V_inv(u, q(BlaschkeProduct(), MOB3), basis)
        r1 = mutual_residual(a.columns, SS.subspace_gamma_uH2(MOB3, basis).columns)
        b = SS.pullback_V_inv(u, q(ALPHA2, BlaschkeProduct()), basis)
        ref = SS.direct_sum(SS.subspace_zbar_conj_K(ALPHA2, basis), SS.u_chain(basis))
        r2 = mutual_residual(b.columns, ref.columns)
    return VerificationReport("pullback_identity", _params(u, cfg.N), max(r1, r2),
                              cfg.tol("containment"), runtime_ms=t[0],
                              details={"beta_only": r1, "alpha_only": r2})


def classification_report(u, cfg: CampaignConfig) -> VerificationReport:
    with timed() as t:
        basis = ambient_basis(u, cfg.N, band_guard=cfg.band_guard)
        got = {}
        wrong = 0
        for tag, s in split_cases(basis):
            c = SS.classify_orthogonal_sum(s, basis)
            got[tag] = c.tag
            wrong += c.tag != tag
    return VerificationReport("classification", _params(u, cfg.N), float(wrong), 0.0,
                              runtime_ms=t[0], details={"tags": got})


def suite_subspaces(cfg: CampaignConfig) -> Iterator[VerificationReport]:
    for item in cfg.inner:
        yield from invariance_reports(item.u, cfg)
        if origin_branch(item.u):
            yield pullback_identity_report(item.u, cfg)
        yield classification_report(item.u, cfg)


# -- worked examples ---------------------------------------------------------------

def proper_containment_reports(cfg: CampaignConfig) -> Iterator[VerificationReport]:
    out = SS.example_6_3_proper_containment(cfg.lam, cfg.N, cfg.tol("containment"))
    yield out["report"]
    gap = max(0.0, cfg.tol("properness") - out["distance"])
    yield VerificationReport("proper_containment_properness", {"lambda": cfg.lam, "N": cfg.N}, gap, 0.0,
                             details={"distance": out["distance"],
                                      "threshold": cfg.tol("properness")})
    u = BlaschkeProduct.mobius(cfg.lam)
    c = SS.classify_orthogonal_sum(out["S1"], ambient_basis(u, cfg.N))
    yield VerificationReport("proper_containment_nonsplitting", {"lambda": cfg.lam, "N": cfg.N},
                             float(c.tag != "NonSplitting"), 0.0,
                             details={"tag": c.tag, "split_residual": c.split_residual})


def kernel_pair_cyclic_reports(cfg: CampaignConfig) -> Iterator[VerificationReport]:
    out = SS.kernel_pair_cyclic(cfg.a, cfg.N, samples=50, seed=cfg.seed, tol=cfg.tol("membership"))
    yield out["report"]
    gap = max(0.0, cfg.tol("properness") - out["distance"])
    yield VerificationReport("kernel_pair_cyclic_properness", {"a": cfg.a, "N": cfg.N}, gap, 0.0,
                             details={"distance": out["distance"],
                                      "threshold": cfg.tol("properness")})


def geometric_vector(lam, n: int, ctx=None) -> list:
    """sum_j lam^(j-1) zbar^j in ambient order (zbar^N first), as ``ctx`` numbers."""
    ctx = ctx or mpmath.mp
    lam = ctx.mpc(lam)
    f = [ctx.mpc(0)] * (2 * n)
    for j in range(1, n + 1):
        f[n - j] = lam ** (j - 1)
    return f


def point_spectrum_report(u, lam, N, dps: int = 50) -> VerificationReport:
    """||D f - lam f|| / ||f|| for the geometric vector f.

    |lam|^N is far below double-precision roundoff, so the residual is
    evaluated in ``dps``-digit arithmetic; D's entries are exact 0/1 values.
    """
    with timed() as t:
        basis = ambient_basis(u, N)
        d = build_D(basis).entries
        with mpmath.workdps(dps):
            ctx = mpmath.mp
            f = geometric_vector(lam, N, ctx)
            lm = ctx.mpc(lam)
            r2 = ctx.mpf(0)
            for i in range(2 * N):
                nz = np.flatnonzero(d[i])
                di = ctx.fsum(ctx.mpc(complex(d[i, j])) * f[j] for j in nz)
                r2 += abs(di - lm * f[i]) ** 2
            res = float(ctx.sqrt(r2) / ctx.sqrt(ctx.fsum(abs(x) ** 2 for x in f)))
    return VerificationReport("approximate_eigenvector", _params(u, N, lam=complex(lam)), res,
                              2 * abs(lam) ** N, runtime_ms=t[0],
                              details={"exact_bound": abs(lam) ** N, "digits": dps})


SPECTRUM_POINTS = (0.3, 0.5 * np.exp(0.25j * np.pi), 0.8j)


def suite_examples(cfg: CampaignConfig) -> Iterator[VerificationReport]:
    yield from proper_containment_reports(cfg)
    yield from kernel_pair_cyclic_reports(cfg)
    for item in cfg.inner:
        if not origin_branch(item.u):
            for lam in SPECTRUM_POINTS:
                yield point_spectrum_report(item.u, lam, cfg.N)


SUITES: dict[str, Callable[[CampaignConfig], Iterator[VerificationReport]]] = {
    "projections": suite_projections,
    "model_space": suite_model_space,
    "dual_formula": suite_dual_formula,
    "defect": suite_defect,
    "blocks": suite_blocks,
    "flip": suite_flip,
    "similarity": suite_similarity,
    "equivalence": suite_equivalence,
    "subspaces": suite_subspaces,
    "examples": suite_examples,
}


def run(cfg: CampaignConfig, names: list[str] | None = None) -> Iterator[VerificationReport]:
    for name in names or cfg.suites:
        log.info("suite %s", name)
        for rep in SUITES[name](cfg):
            log.debug("%s", rep.line())
            yield rep
