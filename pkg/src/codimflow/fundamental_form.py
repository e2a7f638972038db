"""Pointwise algebra of second fundamental forms in arbitrary codimension.

Single-fiber computations: given a metric g on an m-dimensional tangent
space and a second fundamental form A with k components in an orthonormal
normal frame, derive the classical contraction tensors

    H^a         = g^{ij} A^a_{ij}               (mean curvature)
    a_{ij}      = sum_a H^a A^a_{ij}
    b_{ij}      = A^a_{ik} g^{kl} A^a_{lj}
    c^{ab}_{ij} = A^a_{ik} g^{kl} A^b_{lj}
    R^{ab}_{ij} = c^{ab}_{ij} - c^{ab}_{ji}      (normal curvature)
    S^{ab}      = A^a_{ij} A^{b ij}              (Gram matrix of the A^a)

together with the seven independent cubic contractions C1..C7 of (b, c)
that appear in the reaction term of the normal-curvature evolution, and
the four gradient contractions Q1..Q4 that decompose |grad R^perp|^2.

Latin (tangent) indices are raised and lowered with g; normal indices
live in an orthonormal frame, so raising them is trivial.  Everything
here is exact multilinear algebra on one fiber: no grids, no PDE.  All
functions are pure and safe to call concurrently on independent samples.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "FundamentalFormSample",
    "DerivedInvariants",
    "IdentityResidual",
    "derive_invariants",
    "cubic_invariants",
    "check_pointwise_identities",
    "gradient_invariants",
    "random_fundamental_form",
]

_SYM_TOL = 1e-12


@dataclass(frozen=True)
class FundamentalFormSample:
    """One fiber of metric + second fundamental form data.

    Attributes:
        m: intrinsic dimension.
        k: codimension (number of orthonormal normal directions).
        g: (m, m) symmetric positive definite metric.
        A: (k, m, m) normal components A^a_{ij}, symmetric in (i, j).
        gradA: optional (m, k, m, m) covariant derivative components
            (grad A)[l, a, i, j], symmetric in (i, j) for every (l, a).
    """

    m: int
    k: int
    g: np.ndarray
    A: np.ndarray
    gradA: np.ndarray | None = None

    def __post_init__(self):
        g = np.asarray(self.g, dtype=float)
        A = np.asarray(self.A, dtype=float)
        if g.shape != (self.m, self.m):
            raise ValueError(f"g must have shape ({self.m}, {self.m}), got {g.shape}")
        if A.shape != (self.k, self.m, self.m):
            raise ValueError(
                f"A must have shape ({self.k}, {self.m}, {self.m}), got {A.shape}"
            )
        if not np.allclose(g, g.T, atol=_SYM_TOL):
            raise ValueError("metric g must be symmetric")
        if np.linalg.eigvalsh(g).min() <= 0.0:
            raise ValueError("metric g must be positive definite")
        if not np.allclose(A, np.swapaxes(A, 1, 2), atol=_SYM_TOL):
            raise ValueError("A must be symmetric in its tangent indices")
        if self.gradA is not None:
            dA = np.asarray(self.gradA, dtype=float)
            if dA.shape != (self.m, self.k, self.m, self.m):
                raise ValueError(
                    f"gradA must have shape ({self.m}, {self.k}, {self.m}, {self.m}),"
                    f" got {dA.shape}"
                )
            if not np.allclose(dA, np.swapaxes(dA, 2, 3), atol=_SYM_TOL):
                raise ValueError("gradA must be symmetric in its last two indices")
            object.__setattr__(self, "gradA", dA)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "A", A)


@dataclass(frozen=True)
class DerivedInvariants:
    """Tensors derived from one FundamentalFormSample by contraction."""

    H: np.ndarray               # (k,) mean curvature components
    a: np.ndarray               # (m, m)  a_{ij} = H^a A^a_{ij}
    b: np.ndarray               # (m, m)  b_{ij} = A^a_{ik} A^{a k}_j
    c: np.ndarray               # (k, k, m, m)  c^{ab}_{ij}
    normal_curv: np.ndarray     # (k, k, m, m)  R^{ab}_{ij}, antisymmetric pairs
    gram: np.ndarray            # (k, k)  S^{ab} = <A^a, A^b>_g
    norm2_A: float
    norm2_H: float
    norm2_a: float
    norm2_b: float
    norm2_normal_curv: float
    norm2_gram: float           # |A^{a m}_n A^{b n}_m|^2


@dataclass(frozen=True)
class IdentityResidual:
    """Absolute and relative mismatch of one two-sided identity."""

    lhs: float
    rhs: float
    absolute: float = field(init=False)
    relative: float = field(init=False)

    def __post_init__(self):
        err = abs(self.lhs - self.rhs)
        object.__setattr__(self, "absolute", err)
        # Identities near zero need the absolute comparison; the +1 keeps
        # the denominator away from 0 without masking O(1) mismatches.
        scale = 1.0 + max(abs(self.lhs), abs(self.rhs))
        object.__setattr__(self, "relative", err / scale)


def derive_invariants(s: FundamentalFormSample) -> DerivedInvariants:
    """Compute all first-layer contractions of (g, A) on one fiber."""
    G = np.linalg.inv(s.g)
    A = s.A
    H = np.einsum("ij,aij->a", G, A)
    a_t = np.einsum("a,aij->ij", H, A)
    c = np.einsum("aik,kl,blj->abij", A, G, A)
    b = np.einsum("aaij->ij", c)
    rp = c - np.swapaxes(c, 2, 3)
    gram = np.einsum("aij,ik,jl,bkl->ab", A, G, G, A)
    norm2_A = float(np.trace(gram))
    norm2_H = float(H @ H)
    norm2_a = float(np.einsum("ij,ik,jl,kl->", a_t, G, G, a_t))
    norm2_b = float(np.einsum("ij,ik,jl,kl->", b, G, G, b))
    norm2_rp = float(np.einsum("abij,ik,jl,abkl->", rp, G, G, rp))
    return DerivedInvariants(
        H=H,
        a=a_t,
        b=b,
        c=c,
        normal_curv=rp,
        gram=gram,
        norm2_A=norm2_A,
        norm2_H=norm2_H,
        norm2_a=norm2_a,
        norm2_b=norm2_b,
        norm2_normal_curv=norm2_rp,
        norm2_gram=float(np.sum(gram * gram)),
    )


def cubic_invariants(s: FundamentalFormSample) -> np.ndarray:
    """The seven cubic contraction invariants C1..C7 of (b, c).

    Each is a full contraction of three factors drawn from b and
    c^{ab}_{ij} (equivalently, degree six in A):

        C1 = b^{ij} b^m_i b_{jm}
        C2 = b^{ij} b^m_k A^k_{aj} A^a_{mi}
        C3 = b^{ij} c^{ab}_{ji} S^{ab}
        C4 = b^j_l c^{ab}_{jk} c^{lk}_{ba}
        C5 = S^{ag} c^{bg}_{jl} c^{lj}_{ba}
        C6 = c^{ag}_{mi} c^{b m}_{j g} c^{ij}_{ba}
        C7 = c^{a j}_{i b} c^{l g}_{a j} c^{i b}_{g l}

    Raised tangent indices are contractions with g^{-1}; raised or
    lowered normal indices are free (orthonormal frame).  Returned in
    order as a shape (7,) array.
    """
    G = np.linalg.inv(s.g)
    A = s.A
    inv = derive_invariants(s)
    b, c, S = inv.b, inv.c, inv.gram
    bu = G @ b @ G            # b^{ij}
    bm = G @ b                # b^i_j
    Am = np.einsum("kp,apj->akj", G, A)   # A^{a k}_j

    c1 = np.trace(bm @ bm @ bm)
    c2 = np.einsum("ij,mk,akj,ami->", bu, bm, Am, A)
    c3 = np.einsum("ij,abji,ab->", bu, c, S)
    c4 = np.einsum("jl,abjk,lp,kq,bapq->", bm, c, G, G, c)
    c5 = np.einsum("ag,bgjl,lp,jq,bapq->", S, c, G, G, c)
    c6 = np.einsum("agmi,mp,bgjp,iq,jr,baqr->", c, G, c, G, G, c)
    c7 = np.einsum("abip,pj,agqj,ql,gbrl,ri->", c, G, c, G, c, G)
    return np.array([c1, c2, c3, c4, c5, c6, c7])


def _gauss_riemann(A: np.ndarray) -> np.ndarray:
    """Intrinsic curvature R_{ijkl} built from A via the Gauss relation."""
    return np.einsum("aik,ajl->ijkl", A, A) - np.einsum("ail,ajk->ijkl", A, A)


def check_pointwise_identities(
    s: FundamentalFormSample,
) -> dict[str, IdentityResidual]:
    """Residuals of the five algebraic identities tying R^perp to C1..C7.

    The identities (left = right):

        rperp_riem_contraction:   R^{ab}_{ij} R_{ab kl} R^{ijkl} = 4 (C6 - C7)
        gram_rperp_pair:          S^{ag} R_{ab}^{ij} R^{gb}_{ij} = 2 (C3 - C5)
        rperp_triple:             R^{ab}_{ij} R_a^{g i}_l R_{bg}^{jl}
                                      = C1 - 3 C4 + 3 C6 - C7
        b_rperp_pair:             b^{ij} R^{ab}_{ki} R_{ab}^k_j = 2 (C2 - C4)
        rperp_norm_decomposition: |R^perp|^2 = 2 |b|^2 - 2 c^{ab}_{ij} c^{ij}_{ba}

    The intrinsic curvature in the first identity comes from A through
    the Gauss relation.  Both sides are evaluated numerically; nothing
    is simplified symbolically.
    """
    G = np.linalg.inv(s.g)
    inv = derive_invariants(s)
    rp, c, b, S = inv.normal_curv, inv.c, inv.b, inv.gram
    C = cubic_invariants(s)
    bu = G @ b @ G

    riem = _gauss_riemann(s.A)
    riem_up = np.einsum("ip,jq,kr,ls,pqrs->ijkl", G, G, G, G, riem)

    lhs1 = np.einsum("abij,abkl,ijkl->", rp, rp, riem_up)
    lhs2 = np.einsum("ag,ip,jq,abpq,gbij->", S, G, G, rp, rp)
    lhs3 = np.einsum("abij,ip,agpl,jq,lr,bgqr->", rp, G, rp, G, G, rp)
    lhs4 = np.einsum("ij,abki,kr,abrj->", bu, rp, G, rp)
    cc = np.einsum("abij,ip,jq,bapq->", c, G, G, c)

    return {
        "rperp_riem_contraction": IdentityResidual(float(lhs1), float(4 * (C[5] - C[6]))),
        "gram_rperp_pair": IdentityResidual(float(lhs2), float(2 * (C[2] - C[4]))),
        "rperp_triple": IdentityResidual(
            float(lhs3), float(C[0] - 3 * C[3] + 3 * C[5] - C[6])
        ),
        "b_rperp_pair": IdentityResidual(float(lhs4), float(2 * (C[1] - C[3]))),
        "rperp_norm_decomposition": IdentityResidual(
            float(inv.norm2_normal_curv), float(2 * inv.norm2_b - 2 * cc)
        ),
    }


def gradient_invariants(
    s: FundamentalFormSample,
) -> tuple[np.ndarray, dict[str, IdentityResidual]]:
    """Gradient contractions Q1..Q4 and the three decompositions they obey.

    Requires gradA.  The derivatives of R^perp, b and c are expanded
    from (A, grad A) by the product rule, so the decompositions

        |grad R^perp|^2      = 4 (Q1 + Q2 - Q3 - Q4)
        |grad b|^2           = 2 (Q2 + Q3)
        grad c : grad c^T    = 2 (Q3 + Q4)

    are exact polynomial identities in (g, A, grad A); their residuals
    measure floating-point error only.
    """
    if s.gradA is None:
        raise ValueError("gradient_invariants requires a sample with gradA")
    G = np.linalg.inv(s.g)
    A, dA = s.A, s.gradA
    inv = derive_invariants(s)
    bu = G @ inv.b @ G
    Am = np.einsum("kp,apj->akj", G, A)

    q1 = np.einsum("mk,lp,paik,iq,laqm->", bu, G, dA, G, dA)
    q2 = np.einsum("bkj,aim,lp,paik,lbmj->", Am, Am, G, dA, dA)
    q3 = np.einsum("mx,ky,abxy,lp,paik,iq,lbqm->", G, G, inv.c, G, dA, G, dA)
    q4 = np.einsum("bkj,bim,lp,paik,jx,my,laxy->", Am, Am, G, dA, G, G, dA)
    Q = np.array([q1, q2, q3, q4])

    # Product-rule expansions of the derived tensors.
    dc = np.einsum("laik,kp,bpj->labij", dA, G, A) + np.einsum(
        "aik,kp,lbpj->labij", A, G, dA
    )
    drp = dc - np.swapaxes(dc, 3, 4)
    db = np.einsum("laaij->lij", dc)

    norm2_drp = np.einsum("labij,lp,ik,jq,pabkq->", drp, G, G, G, drp)
    norm2_db = np.einsum("lij,lp,ik,jq,pkq->", db, G, G, G, db)
    dcdc = np.einsum("labij,lp,ik,jq,pbakq->", dc, G, G, G, dc)

    residuals = {
        "grad_rperp_decomposition": IdentityResidual(
            float(norm2_drp), float(4 * (Q[0] + Q[1] - Q[2] - Q[3]))
        ),
        "grad_b_decomposition": IdentityResidual(
            float(norm2_db), float(2 * (Q[1] + Q[2]))
        ),
        "grad_c_pairing": IdentityResidual(float(dcdc), float(2 * (Q[2] + Q[3]))),
    }
    return Q, residuals


def random_fundamental_form(
    seed: int, m: int, k: int, with_grad: bool = False
) -> FundamentalFormSample:
    """Deterministic pseudo-random sample for fuzzing.

    Entries are uniform in [-1, 1], symmetrized in the tangent indices.
    The metric is the identity plus a 0.2-amplitude symmetric
    perturbation, rejection-resampled until comfortably positive
    definite so index raising is exercised without conditioning issues.
    """
    if m < 1 or k < 1:
        raise ValueError("need m >= 1 and k >= 1")
    rng = np.random.default_rng(seed)
    while True:
        P = 0.2 * rng.uniform(-1.0, 1.0, size=(m, m))
        g = np.eye(m) + 0.5 * (P + P.T)
        if np.linalg.eigvalsh(g).min() > 0.1:
            break
    A = rng.uniform(-1.0, 1.0, size=(k, m, m))
    A = 0.5 * (A + np.swapaxes(A, 1, 2))
    gradA = None
    if with_grad:
        dA = rng.uniform(-1.0, 1.0, size=(m, k, m, m))
        gradA = 0.5 * (dA + np.swapaxes(dA, 2, 3))
    return FundamentalFormSample(m=m, k=k, g=g, A=A, gradA=gradA)
