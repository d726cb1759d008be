"""Jordan angles and the CS decomposition of a subspace against a
coordinate subspace.

Given a p-dimensional subspace E of R^N and a set J of n <= p ground
points, the decomposition produces ascending angles theta_1 <= ... <=
theta_n in [0, pi/2] together with four vector families (u in R^n; V, W,
W-tilde in R^{N-n}) from which orthonormal bases of both E and its
orthogonal complement can be assembled blockwise.  The squared cosine
product of the angles is the probability that J is contained in the
process induced by E; the squared sine product is the probability that J
avoids it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InconsistentCase, TooManyPoints
from .exterior import as_family, orthonormalize
from .pointsets import PointSet, check_within
from .process import OrthonormalFrame, ProjectionDPP, complement_frame
from .report import CheckReport, identity_report

CASE_I = "I"
CASE_II = "II"
CASE_III = "III"
CASE_IV_I = "IV_i"
CASE_IV_II = "IV_ii"
CASE_IV_III = "IV_iii"

# 1 - cos(theta) at or below this counts as a zero angle: the paired
# direction inside the coordinate block is numerically unresolvable.
ZERO_ANGLE_TOL = 1e-9


def case_tag(n: int, p: int, n_points: int) -> str:
    """Case label as a pure function of (|J|, dim E, N)."""
    if n < p:
        if p + n < n_points:
            return CASE_I
        if p + n > n_points:
            return CASE_II
        return CASE_III
    if 2 * p < n_points:
        return CASE_IV_I
    if 2 * p > n_points:
        return CASE_IV_II
    return CASE_IV_III


def _family_sizes(n: int, p: int, n_points: int) -> tuple[int, int, int, int]:
    """(#forced zero angles, |V|, |W|, |W-tilde|) for the given shape."""
    n_v = min(n, n_points - p)
    return n - n_v, n_v, p - n, max(0, n_points - p - n)


@dataclass(frozen=True)
class CSDecomposition:
    """Angles, families, case tag, and the coordinate bookkeeping needed
    to reassemble bases in the original coordinates.

    ``perm`` lists, per position of the J-first coordinate order, the
    0-based original coordinate it came from.  Families are row-major:
    ``u_family`` is (n, n); the other three are (count, N - n).
    """

    case: str
    angles: tuple[float, ...]
    u_family: np.ndarray
    v_family: np.ndarray
    w_family: np.ndarray
    w_tilde_family: np.ndarray
    n_points: int
    rank: int
    points: PointSet
    perm: tuple[int, ...]

    @property
    def n_conditioned(self) -> int:
        return len(self.angles)

    def to_dict(self) -> dict:
        return {
            "case": self.case,
            "angles_rad": list(self.angles),
            "u": self.u_family.tolist(),
            "v": self.v_family.tolist(),
            "w": self.w_family.tolist(),
            "w_tilde": self.w_tilde_family.tolist(),
        }


def compute_cs(e_basis, points: PointSet) -> CSDecomposition:
    """CS decomposition of span(e_basis) against the coordinate subspace
    supported on ``points``.

    ``e_basis`` is any linearly independent (p, N) family; it is
    orthonormalized internally.  Cosines of the angles are the singular
    values of the J-row block, clamped into [0, 1]; sines of the paired
    directions are read off the complementary row block, which stays
    accurate when an angle is near zero.
    """
    fam = as_family(e_basis)
    p, n_pts = fam.shape
    check_within(points, n_pts)
    n = len(points)
    if n == 0:
        raise ValueError("the conditioning point set must be nonempty")
    if n > p:
        raise TooManyPoints(f"|J| = {n} exceeds the subspace dimension {p}")

    z = orthonormalize(fam).T  # (N, p), orthonormal columns
    j_rows = [i - 1 for i in points.indices]
    rest = [i for i in range(n_pts) if i + 1 not in points]
    perm = tuple(j_rows + rest)
    zp = z[list(perm), :]

    u_mat, sig, vt = np.linalg.svd(zp[:n, :], full_matrices=True)
    cosines = np.clip(sig, 1e-300, 1.0)
    angles = np.arccos(cosines)  # ascending: sig is descending

    z_forced, n_v, n_w, n_wt = _family_sizes(n, p, n_pts)
    angles[:z_forced] = 0.0  # the dimension count forces these to zero

    rotated = zp @ vt.T
    off = rotated[n:, :]  # (N - n, p)

    v_rows: list[np.ndarray | None] = []
    for k in range(n_v):
        i = z_forced + k
        if 1.0 - cosines[i] <= ZERO_ANGLE_TOL:
            v_rows.append(None)  # direction unresolved; fill from complement
        else:
            c = off[:, i]
            v_rows.append(c / np.linalg.norm(c))

    w_family = off[:, n:p].T.copy()

    defined = [row for row in v_rows if row is not None] + [w for w in w_family]
    missing = sum(row is None for row in v_rows)
    if missing + n_wt > 0:
        if defined:
            b = np.stack(defined, axis=1)
            u_full = np.linalg.svd(b, full_matrices=True)[0]
            comp = u_full[:, b.shape[1] :]
        else:
            comp = np.eye(n_pts - n)
        fill = iter(comp.T)
        v_rows = [next(fill) if row is None else row for row in v_rows]
        w_tilde = np.array([next(fill) for _ in range(n_wt)]).reshape(n_wt, n_pts - n)
    else:
        w_tilde = np.empty((0, n_pts - n))

    v_family = (
        np.array(v_rows).reshape(n_v, n_pts - n)
        if n_v
        else np.empty((0, n_pts - n))
    )
    return CSDecomposition(
        case=case_tag(n, p, n_pts),
        angles=tuple(float(a) for a in angles),
        u_family=u_mat.T.copy(),
        v_family=v_family,
        w_family=w_family,
        w_tilde_family=w_tilde,
        n_points=n_pts,
        rank=p,
        points=points,
        perm=perm,
    )


def _check_cardinalities(cs: CSDecomposition) -> tuple[int, int, int, int]:
    n, p, n_pts = cs.n_conditioned, cs.rank, cs.n_points
    z_forced, n_v, n_w, n_wt = _family_sizes(n, p, n_pts)
    shapes = {
        "u": (cs.u_family.shape, (n, n)),
        "v": (cs.v_family.shape, (n_v, n_pts - n)),
        "w": (cs.w_family.shape, (n_w, n_pts - n)),
        "w_tilde": (cs.w_tilde_family.shape, (n_wt, n_pts - n)),
    }
    for name, (got, want) in shapes.items():
        if got != want:
            raise InconsistentCase(
                f"family {name} has shape {got}, case {cs.case} requires {want}"
            )
    if cs.case != case_tag(n, p, n_pts):
        raise InconsistentCase(
            f"case tag {cs.case} contradicts (n={n}, p={p}, N={n_pts})"
        )
    return z_forced, n_v, n_w, n_wt


def _recon_cos_sin(angles: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Cos/sin used for reassembly, with zero angles snapped exactly."""
    cos = np.cos(angles)
    sin = np.sin(angles)
    zero = 1.0 - cos <= ZERO_ANGLE_TOL
    cos[zero] = 1.0
    sin[zero] = 0.0
    return cos, sin


def reconstruct_bases(cs: CSDecomposition) -> tuple[np.ndarray, np.ndarray]:
    """Assemble orthonormal bases of E and of its orthogonal complement
    from the case formulas, returned in the original coordinates.

    Returns (z_family, z_perp_family) as (p, N) and (N - p, N) row-major
    families.
    """
    z_forced, n_v, n_w, n_wt = _check_cardinalities(cs)
    n, p, n_pts = cs.n_conditioned, cs.rank, cs.n_points
    angles = np.asarray(cs.angles)
    cos, sin = _recon_cos_sin(angles)

    def assemble(u_part: np.ndarray, off_part: np.ndarray) -> np.ndarray:
        vec = np.empty(n_pts)
        vec[list(cs.perm)] = np.concatenate([u_part, off_part])
        return vec

    zero_off = np.zeros(n_pts - n)
    z_rows = []
    for i in range(n):
        off = cs.v_family[i - z_forced] * sin[i] if i >= z_forced else zero_off
        z_rows.append(assemble(cs.u_family[i] * cos[i], off))
    for k in range(n_w):
        z_rows.append(assemble(np.zeros(n), cs.w_family[k]))

    perp_rows = []
    for k in range(n_v):
        i = z_forced + k
        perp_rows.append(assemble(cs.u_family[i] * sin[i], -cs.v_family[k] * cos[i]))
    for k in range(n_wt):
        perp_rows.append(assemble(np.zeros(n), cs.w_tilde_family[k]))

    z_family = np.array(z_rows).reshape(p, n_pts)
    z_perp = np.array(perp_rows).reshape(n_pts - p, n_pts)
    return z_family, z_perp


def cos_sin_products(cs: CSDecomposition) -> tuple[float, float]:
    """(prod cos^2 theta_i, prod sin^2 theta_i) over the Jordan angles."""
    angles = np.asarray(cs.angles)
    return (
        float(np.prod(np.cos(angles) ** 2)),
        float(np.prod(np.sin(angles) ** 2)),
    )


def verify_prop1_probabilities(
    frame: OrthonormalFrame, points: PointSet, tolerance: float = 1e-9
) -> CheckReport:
    """Check the two angle/probability identities for one frame and J.

    The cos^2 product must equal the inclusion probability of J, and the
    sin^2 product must equal the inclusion probability of J under the
    complement process.  Both comparisons are reported as children; the
    top-level report carries the worse of the two deviations.
    """
    dpp = ProjectionDPP(frame)
    cs = compute_cs(frame.columns, points)
    cos2, sin2 = cos_sin_products(cs)

    eq1 = identity_report(
        "prop1_eq1_cos2_vs_inclusion",
        cos2,
        dpp.inclusion_probability(points),
        tolerance,
    )
    if frame.rank < frame.n_points:
        comp = ProjectionDPP(complement_frame(frame))
        rhs2 = comp.inclusion_probability(points)
    else:
        rhs2 = 1.0 if len(points) == 0 else 0.0
    eq2 = identity_report("prop1_eq2_sin2_vs_complement", sin2, rhs2, tolerance)

    worst = max(abs(eq1.lhs - eq1.rhs), abs(eq2.lhs - eq2.rhs))
    return identity_report(
        "prop1",
        worst,
        0.0,
        tolerance,
        witness=f"J={list(points.indices)} case={cs.case}",
        children=(eq1, eq2),
    )
