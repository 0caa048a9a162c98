"""First-principles dense-matrix certification of the closed forms.

Everything here works on the full n^N-dimensional tensor space (sites
ordered A-block, B-block, C-block, most significant site first) and is
deliberately independent of the block formulas it checks: supports are
certified eigenvector bases of the dense states, principal angles come
from an SVD, the Helstrom value from diagonalizing the weighted
difference operator, and the unambiguous POVM is assembled vector by
vector from the Jordan pairs.

Two certified eigen-routes are used.  ``hermitian_eig`` wraps numpy's
``eigh`` in explicit residual and unitarity checks.  For the mean states
— whose supports are tensor products of symmetric subspaces — a candidate
orthonormal basis is built directly from multiset vectors and then
*certified* against the dense matrix (eigen-residual per column plus a
full reconstruction residual, which bounds everything outside the
candidate span).  Nothing downstream trusts either route silently.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, permutations

import numpy as np

from .discrimination import total_failure
from .errors import OracleError
from .spectrum import ProblemConfig, canonicalize, jordan_spectrum

DEFAULT_DIM_CAP = 4096
SUPPORT_TOL = 1e-9
GROUP_TOL = 1e-7
_HAAR_CHUNK = 20_000


def dim_cap(cap: int | None = None) -> int:
    """Configured dense-operator size limit (QUDISC_MAX_DIM overrides)."""
    if cap is not None:
        return cap
    env = os.environ.get("QUDISC_MAX_DIM")
    return int(env) if env else DEFAULT_DIM_CAP


def _check_cap(dim: int, cap: int | None) -> None:
    limit = dim_cap(cap)
    if dim > limit:
        raise OracleError(f"dense dimension {dim} exceeds cap {limit}")


def assert_hermitian(m: np.ndarray, tol: float = 1e-12) -> None:
    defect = np.abs(m - m.conj().T).max()
    if defect > tol:
        raise OracleError(f"matrix not Hermitian: max asymmetry {defect:.3e}")


def hermitian_eig(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Certified Hermitian eigendecomposition: ascending eigenvalues and a
    unitary eigenvector matrix, with residuals checked explicitly."""
    assert_hermitian(m)
    values, vectors = np.linalg.eigh(m)
    scale = max(1.0, float(np.abs(values).max(initial=0.0)))
    residual = np.abs(m @ vectors - vectors * values).max()
    if residual > 1e-10 * scale:
        raise OracleError(f"eigensolver residual {residual:.3e} exceeds 1e-10*{scale:.3e}")
    unitarity = np.abs(vectors.conj().T @ vectors - np.eye(m.shape[0])).max()
    if unitarity > 1e-10:
        raise OracleError(f"eigenvector matrix not unitary: defect {unitarity:.3e}")
    return values, vectors


def _kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # np.kron is far too slow for ~1000x1000 outputs; one broadcast
    # multiply plus reshape is equivalent for 2-d inputs
    ra, ca = a.shape
    rb, cb = b.shape
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(ra * rb, ca * cb)


def _sym_basis(m: int, n: int) -> np.ndarray:
    """Orthonormal columns spanning the fully symmetric subspace of m
    copies of C^n: one normalized vector per multiset of site labels."""
    dim = n**m
    weights = n ** np.arange(m - 1, -1, -1)
    columns = []
    for multiset in combinations_with_replacement(range(n), m):
        indices = sorted({int(np.dot(p, weights)) for p in permutations(multiset)})
        v = np.zeros(dim)
        v[indices] = 1.0 / math.sqrt(len(indices))
        columns.append(v)
    return np.array(columns).T


def symmetrizer(m: int, n: int, cap: int | None = None) -> np.ndarray:
    """Projector onto the fully symmetric subspace of m copies of C^n."""
    _check_cap(n**m, cap)
    basis = _sym_basis(m, n)
    return (basis @ basis.T).astype(complex)


def mean_states(cfg: ProblemConfig, cap: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """The two Haar-averaged inputs as dense density matrices: maximally
    mixed on sym(AB) x sym(C) and on sym(A) x sym(BC)."""
    dim = cfg.n ** cfg.total_copies
    _check_cap(dim, cap)
    rho1 = _kron(symmetrizer(cfg.n1, cfg.n, cap), symmetrizer(cfg.n_c, cfg.n, cap)) / cfg.d1
    rho2 = _kron(symmetrizer(cfg.n_a, cfg.n, cap), symmetrizer(cfg.n2, cfg.n, cap)) / cfg.d2
    for rho in (rho1, rho2):
        if abs(float(np.trace(rho).real) - 1.0) > 1e-12:
            raise OracleError("mean state trace deviates from one")
    return rho1, rho2


def haar_average(
    m: int, n: int, samples: int, seed: int, cap: int | None = None
) -> np.ndarray:
    """Empirical mean of the m-fold tensor power projector over Haar-random
    pure states; deterministic for a fixed (seed, m, n, samples)."""
    dim = n**m
    _check_cap(dim, cap)
    if samples < 1:
        raise ValueError("need at least one sample")
    rng = np.random.default_rng((seed, m, n))
    acc = np.zeros((dim, dim), dtype=complex)
    remaining = samples
    while remaining > 0:
        count = min(_HAAR_CHUNK, remaining)
        psi = rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))
        psi /= np.linalg.norm(psi, axis=1, keepdims=True)
        rows = psi
        for _ in range(m - 1):
            rows = (rows[:, :, None] * psi[:, None, :]).reshape(count, -1)
        acc += rows.T @ rows.conj()
        remaining -= count
    return acc / samples


def support_basis(rho: np.ndarray, tol: float = SUPPORT_TOL) -> np.ndarray:
    """Orthonormal columns spanning the support (eigenvalues above tol)."""
    values, vectors = hermitian_eig(rho)
    return vectors[:, values > tol]


def _certified_support(rho: np.ndarray, candidate: np.ndarray) -> np.ndarray:
    """Certify that the candidate columns are an orthonormal eigenbasis of
    the support of rho: every column an eigenvector with eigenvalue above
    the support threshold, and nothing of rho left outside their span."""
    gram = np.abs(candidate.T @ candidate - np.eye(candidate.shape[1])).max()
    if gram > 1e-10:
        raise OracleError(f"support candidate not orthonormal: defect {gram:.3e}")
    image = rho @ candidate
    values = np.real(np.einsum("ij,ij->j", candidate.conj(), image))
    if values.min(initial=1.0) <= SUPPORT_TOL:
        raise OracleError("support candidate hit an eigenvalue at or below threshold")
    residual = np.abs(image - candidate * values).max()
    if residual > 1e-10:
        raise OracleError(f"support eigen-residual {residual:.3e} exceeds 1e-10")
    leftover = np.linalg.norm(rho - (candidate * values) @ candidate.T)
    if leftover > 1e-9:
        raise OracleError(f"state has weight {leftover:.3e} outside candidate support")
    return candidate


def _group_cosines(cosines: np.ndarray, group_tol: float) -> list[tuple[float, int]]:
    groups: list[tuple[float, int]] = []
    for c in cosines:  # already descending
        if groups and groups[-1][0] - c <= group_tol:
            prev, count = groups[-1]
            groups[-1] = (prev, count + 1)
        else:
            groups.append((float(c), 1))
    return groups


def principal_angles(
    rho1: np.ndarray, rho2: np.ndarray, group_tol: float = GROUP_TOL
) -> list[tuple[float, int]]:
    """Cosines of the principal angles between the two supports, grouped
    into (cosine, multiplicity) pairs, largest first.  Supports come from
    the generic certified eigensolver; use ``jordan_angles`` for the
    fast config-level route."""
    b1 = support_basis(rho1)
    b2 = support_basis(rho2)
    cosines = np.clip(np.linalg.svd(b1.conj().T @ b2, compute_uv=False), 0.0, 1.0)
    return _group_cosines(cosines, group_tol)


@dataclass(frozen=True)
class _Geometry:
    """Prior-independent dense-oracle data for one config, reduced to an
    orthonormal frame of supp(rho1)+supp(rho2).

    All operators built downstream (the weighted difference Lambda and the
    unambiguous POVM elements) live inside this span, so after certifying
    the frame reconstructs both states exactly, every remaining check is a
    small dense computation in the frame."""

    dim: int
    span_rank: int
    cosines: np.ndarray  # paired singular values, descending
    r1: np.ndarray  # rho1 in the span frame
    r2: np.ndarray
    sf: np.ndarray | None  # Jordan basis of supp(rho1), span frame
    sp1: np.ndarray | None  # per-pair unit vectors orthogonal to the rho1 direction
    sp2: np.ndarray | None  # per-pair unit vectors orthogonal to the rho2 direction
    se: np.ndarray | None  # supp(rho2) directions with no partner in supp(rho1)
    pair_cosines: np.ndarray | None  # cosines of the non-degenerate pairs
    completeness_residual: float | None


@lru_cache(maxsize=None)
def _jordan_geometry(n: int, n_a: int, n_b: int, n_c: int, cap: int | None) -> _Geometry:
    """Build and certify the dense geometry for one copy configuration.

    The POVM pieces (Jordan pairs and their orthogonal complements) are
    only constructed when rank(rho1) <= rank(rho2), i.e. for canonical
    configs; the frame states r1, r2 are valid for any orientation."""
    cfg = ProblemConfig(n, n_a, n_b, n_c, 0.5)  # priors do not enter here
    dim = n ** cfg.total_copies
    _check_cap(dim, cap)
    rho1, rho2 = mean_states(cfg, cap)
    b1 = _certified_support(rho1, _kron(_sym_basis(cfg.n1, n), _sym_basis(cfg.n_c, n)))
    b2 = _certified_support(rho2, _kron(_sym_basis(cfg.n_a, n), _sym_basis(cfg.n2, n)))

    u_span, stacked_sv, _ = np.linalg.svd(np.hstack([b1, b2]), full_matrices=False)
    w = u_span[:, stacked_sv > 1e-6]
    r_pair = []
    for rho in (rho1, rho2):
        r = w.conj().T @ rho @ w
        lost = np.linalg.norm(rho - w @ r @ w.conj().T)
        if lost > 1e-9:
            raise OracleError(f"state has weight {lost:.3e} outside the joint span")
        r_pair.append(r)
    r1, r2 = r_pair

    u, sigma, vh = np.linalg.svd(b1.conj().T @ b2)
    sigma = np.clip(sigma, 0.0, 1.0)
    if b1.shape[1] > b2.shape[1]:
        return _Geometry(dim, w.shape[1], sigma, r1, r2,
                         None, None, None, None, None, None)

    f = b1 @ u  # Jordan basis of supp(rho1)
    g = b2 @ vh.conj().T  # paired + unpaired directions in supp(rho2)
    g_paired, g_extra = g[:, : len(sigma)], g[:, len(sigma):]
    live = 1.0 - sigma > GROUP_TOL  # degenerate pairs carry no complement
    norms = np.sqrt(1.0 - sigma[live] ** 2)
    p2 = (f[:, live] - g_paired[:, live] * sigma[live]) / norms
    p1 = (g_paired[:, live] - f[:, live] * sigma[live]) / norms

    sf = w.conj().T @ f
    sp1 = w.conj().T @ p1
    sp2 = w.conj().T @ p2
    se = w.conj().T @ g_extra
    # the POVM elements always sum to the identity on the joint support by
    # construction, so the completeness residual is prior-independent
    identity_t = sf @ sf.conj().T + sp1 @ sp1.conj().T + se @ se.conj().T
    completeness = float(
        np.abs(w @ identity_t @ w.conj().T - w @ w.conj().T).max()
    )
    return _Geometry(dim, w.shape[1], sigma, r1, r2,
                     sf, sp1, sp2, se, sigma[live], completeness)


def jordan_angles(
    cfg: ProblemConfig, cap: int | None = None, group_tol: float = GROUP_TOL
) -> list[tuple[float, int]]:
    """Principal angles between the supports of the two dense mean states,
    via the certified support bases; grouped like ``principal_angles``."""
    geometry = _jordan_geometry(cfg.n, cfg.n_a, cfg.n_b, cfg.n_c, cap)
    return _group_cosines(geometry.cosines, group_tol)


def lambda_spectrum(cfg: ProblemConfig, cap: int | None = None) -> np.ndarray:
    """Eigenvalues of the weighted difference eta2*rho2 - eta1*rho1 on the
    full tensor space (the kernel outside the joint support contributes
    its zeros explicitly)."""
    geometry = _jordan_geometry(cfg.n, cfg.n_a, cfg.n_b, cfg.n_c, cap)
    values, _ = hermitian_eig(cfg.eta2 * geometry.r2 - cfg.eta1 * geometry.r1)
    padded = np.zeros(geometry.dim)
    padded[: geometry.span_rank] = values
    return np.sort(padded)


def helstrom_probability(cfg: ProblemConfig, cap: int | None = None) -> float:
    """Minimum-error probability from the dense trace norm."""
    values = lambda_spectrum(cfg, cap)
    return 0.5 * (1.0 - float(np.abs(values).sum()))


@dataclass(frozen=True)
class PovmReport:
    """Numerical certification of the unambiguous POVM for one config."""

    config: ProblemConfig
    min_eigenvalue: float
    completeness_residual: float
    error_rho1_pi2: float
    error_rho2_pi1: float
    failure_probability: float
    expected_failure: float
    unpaired_rank: int

    @property
    def failure_residual(self) -> float:
        return abs(self.failure_probability - self.expected_failure)

    def passed(
        self,
        positivity_tol: float = 1e-10,
        completeness_tol: float = 1e-10,
        zero_error_tol: float = 1e-10,
        failure_tol: float = 1e-9,
    ) -> bool:
        return (
            self.min_eigenvalue >= -positivity_tol
            and self.completeness_residual <= completeness_tol
            and self.error_rho1_pi2 <= zero_error_tol
            and self.error_rho2_pi1 <= zero_error_tol
            and self.failure_residual <= failure_tol
        )


def certify_povm(
    cfg: ProblemConfig,
    cap: int | None = None,
    *,
    printed_high_branch: bool = False,
) -> PovmReport:
    """Assemble the optimal unambiguous POVM from the numerically extracted
    Jordan pairs and measure all of its required properties.

    Pi1 weights the per-pair directions orthogonal to the state-2 vector,
    Pi2 those orthogonal to the state-1 vector plus the unpaired part of
    supp(rho2); Pi0 is the remainder of the joint-support identity.
    Degenerate pairs (cosine 1) carry no unambiguous information and fall
    entirely into Pi0.

    ``printed_high_branch`` is the negative control: it builds the POVM
    from the erratum q1 = O_k, which must break the failure-probability
    equality whenever a HIGH branch is active.
    """
    canonical, _ = canonicalize(cfg)
    _check_cap(canonical.n ** canonical.total_copies, cap)
    geo = _jordan_geometry(canonical.n, canonical.n_a, canonical.n_b, canonical.n_c, cap)
    spectrum = jordan_spectrum(canonical)
    result = total_failure(canonical, spectrum, printed_high_branch=printed_high_branch)
    q_by_k = {b.k: (b.q1, b.q2) for b in result.blocks}
    o_by_k = [(b.overlap, b.k, float(b.overlap_sq)) for b in spectrum.blocks]

    weight1, weight2 = [], []
    for s in geo.pair_cosines:
        matches = [item for item in o_by_k if abs(item[0] - s) < GROUP_TOL]
        if len(matches) != 1:
            raise OracleError(f"cosine {s!r} matches {len(matches)} blocks")
        _, k, o2 = matches[0]
        q1, q2 = q_by_k[k]
        weight1.append((1.0 - q1) / (1.0 - o2))
        weight2.append((1.0 - q2) / (1.0 - o2))

    m1 = (geo.sp2 * np.asarray(weight1)) @ geo.sp2.conj().T
    m2 = (geo.sp1 * np.asarray(weight2)) @ geo.sp1.conj().T + geo.se @ geo.se.conj().T
    identity_t = (
        geo.sf @ geo.sf.conj().T + geo.sp1 @ geo.sp1.conj().T + geo.se @ geo.se.conj().T
    )
    m0 = identity_t - m1 - m2

    min_eig = min(float(hermitian_eig(op)[0].min()) for op in (m0, m1, m2))
    if geo.dim > geo.span_rank:  # zero eigenvalues outside the joint span
        min_eig = min(min_eig, 0.0)
    err12 = float(np.trace(geo.r1 @ m2).real)
    err21 = float(np.trace(geo.r2 @ m1).real)
    failure = float(
        (canonical.eta1 * np.trace(geo.r1 @ m0) + canonical.eta2 * np.trace(geo.r2 @ m0)).real
    )
    expected = total_failure(canonical, spectrum).q_total
    return PovmReport(
        config=cfg,
        min_eigenvalue=min_eig,
        completeness_residual=geo.completeness_residual,
        error_rho1_pi2=err12,
        error_rho2_pi1=err21,
        failure_probability=failure,
        expected_failure=expected,
        unpaired_rank=geo.se.shape[1],
    )
