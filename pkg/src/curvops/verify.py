"""Verification suites behind the `verify` CLI verbs and the service.

Each suite returns a small report object with a `passed` flag, summary
statistics and per-case rows, so the CLI, the HTTP service and the test
suite all run the same checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .frame import ModelPoint, StructureConstants, build_wedge_basis
from .koszul import compare_tensors, oracle_tensor
from .operators import (
    assemble_operator,
    cluster_spectrum,
    det_holomorphic_closed_form,
    det_sym,
    eigen_sym,
    holomorphic_block,
    leading_principal_minors,
    mixed_block,
)
from .tensor import component_table, curvature_table

VERIFY_CHECKS = ("oracle", "thm13", "det", "blocks", "definiteness")


# ---------------------------------------------------------------------------
# oracle: closed-form table vs Koszul recomputation
# ---------------------------------------------------------------------------

ORACLE_NS = (2, 3, 4)
ORACLE_RS = (0.5, 1.0, 2.0, 4.0, 8.0)
ORACLE_C_LEVELS = (0.0, 0.7, 1.3, 2.0)
ORACLE_TOL = 1e-9


@dataclass(frozen=True)
class OracleCase:
    n: int
    r: float
    c: tuple[float, ...]
    max_diff: float
    worst_tuple: tuple[int, int, int, int]


@dataclass(frozen=True)
class OracleReport:
    passed: bool
    tol: float
    max_diff: float
    worst: OracleCase
    cases: tuple[OracleCase, ...]


def oracle_report(ns=ORACLE_NS, rs=ORACLE_RS, c_levels=ORACLE_C_LEVELS,
                  tol: float = ORACLE_TOL) -> OracleReport:
    """Compare the closed-form table against the Koszul recomputation over a
    full grid of dimensions, radii and structure-constant combinations."""
    cases: list[OracleCase] = []
    for n in ns:
        for combo in itertools.product(c_levels, repeat=n - 1):
            c = StructureConstants(combo)
            for r in rs:
                point = ModelPoint(n=n, r=float(r), c=c)
                cmp = compare_tensors(component_table(point), oracle_tensor(point))
                cases.append(
                    OracleCase(n=n, r=float(r), c=combo,
                               max_diff=cmp.max_abs_diff, worst_tuple=cmp.worst_tuple)
                )
    worst = max(cases, key=lambda case: case.max_diff)
    return OracleReport(
        passed=worst.max_diff < tol, tol=tol, max_diff=worst.max_diff,
        worst=worst, cases=tuple(cases),
    )


def oracle_point_report(point: ModelPoint) -> OracleCase:
    cmp = compare_tensors(component_table(point), oracle_tensor(point))
    return OracleCase(n=point.n, r=point.r, c=point.c.values,
                      max_diff=cmp.max_abs_diff, worst_tuple=cmp.worst_tuple)


# ---------------------------------------------------------------------------
# thm13 verb: reference-metric spectrum law and dimension bookkeeping
# ---------------------------------------------------------------------------

SPECTRUM_NS = (2, 3, 4, 5, 6)
SPECTRUM_RS = (0.5, 2.0, 7.0)
SPECTRUM_CLUSTER_TOL = 1e-7
SPECTRUM_COSINE_TOL = 1e-8
BOOKKEEPING_N_MAX = 8


@dataclass(frozen=True)
class SpectrumCase:
    n: int
    r: float
    spectrum: tuple[tuple[float, int], ...]
    multiplicities_ok: bool
    values_ok: bool
    eigenvector_cosine: float
    passed: bool


@dataclass(frozen=True)
class SpectrumLawReport:
    passed: bool
    cluster_tol: float
    cosine_tol: float
    cases: tuple[SpectrumCase, ...]
    bookkeeping_ok: bool
    bookkeeping: tuple[tuple[int, int, int], ...]  # (n, basis length, 2n^2 - n)


def expected_reference_spectrum(n: int) -> tuple[tuple[float, int], ...]:
    """Ascending (value, multiplicity) clusters for the c == 2 operator:
    -(2n+2) once, -2 with multiplicity n^2-1, 0 with multiplicity n^2-n."""
    return ((-(2.0 * n + 2.0), 1), (-2.0, n * n - 1), (0.0, n * n - n))


def spectrum_law_report(ns=SPECTRUM_NS, rs=SPECTRUM_RS,
                        cluster_tol: float = SPECTRUM_CLUSTER_TOL,
                        cosine_tol: float = SPECTRUM_COSINE_TOL) -> SpectrumLawReport:
    """Exact reference operator spectra plus the eigenvector of the bottom
    eigenvalue (the normalized sum of holomorphic bivectors), and the basis
    length bookkeeping for n up to 8."""
    cases: list[SpectrumCase] = []
    for n in ns:
        basis = build_wedge_basis(n)
        expected = expected_reference_spectrum(n)
        bottom = np.zeros(len(basis))
        bottom[: n] = 1.0 / np.sqrt(n)
        for r in rs:
            point = ModelPoint.complex_hyperbolic(n, r)
            dec = eigen_sym(assemble_operator(component_table(point), basis))
            spec = cluster_spectrum(dec.eigenvalues, cluster_tol)
            mult_ok = tuple(m for _, m in spec.entries) == tuple(m for _, m in expected)
            vals_ok = len(spec.entries) == len(expected) and all(
                abs(got - want) <= cluster_tol
                for (got, _), (want, _) in zip(spec.entries, expected)
            )
            cosine = float(abs(dec.vectors[:, 0] @ bottom))
            cases.append(
                SpectrumCase(
                    n=n, r=float(r), spectrum=spec.entries,
                    multiplicities_ok=mult_ok, values_ok=vals_ok,
                    eigenvector_cosine=cosine,
                    passed=mult_ok and vals_ok and cosine >= 1.0 - cosine_tol,
                )
            )
    bookkeeping = []
    bookkeeping_ok = True
    for n in range(2, BOOKKEEPING_N_MAX + 1):
        length = len(build_wedge_basis(n))
        target = 2 * n * n - n
        total = sum(m for _, m in expected_reference_spectrum(n))
        bookkeeping.append((n, length, target))
        bookkeeping_ok = bookkeeping_ok and length == target and total == target
    return SpectrumLawReport(
        passed=all(c.passed for c in cases) and bookkeeping_ok,
        cluster_tol=cluster_tol, cosine_tol=cosine_tol, cases=tuple(cases),
        bookkeeping_ok=bookkeeping_ok, bookkeeping=tuple(bookkeeping),
    )


# ---------------------------------------------------------------------------
# det: subset polynomial vs numeric determinant of -H_n
# ---------------------------------------------------------------------------

DET_N_MAX = 8
DET_DRAWS = 100
DET_REL_TOL = 1e-10

DET_REFERENCE_NOTE = (
    "det(-H_n) at c == 2 equals 2^n (n+1) (12 for n=2, 32 for n=3, ...), matching the "
    "eigenvalue product 2^(n-1) (2n+2); it does not vanish there, so any expectation "
    "of a zero determinant at c == 2 is inconsistent with the closed form.  Reported, "
    "not asserted."
)


@dataclass(frozen=True)
class DetCase:
    n: int
    max_rel_err: float


@dataclass(frozen=True)
class DetReport:
    passed: bool
    rel_tol: float
    cases: tuple[DetCase, ...]
    exact_value_max_err: float
    reference_det_at_2: tuple[tuple[int, float, float], ...]  # (n, det, 2^n (n+1))
    notes: tuple[str, ...] = (DET_REFERENCE_NOTE,)


def det_report(n_max: int = DET_N_MAX, draws: int = DET_DRAWS, seed: int = 0,
               rel_tol: float = DET_REL_TOL) -> DetReport:
    """The subset polynomial against numeric det(-H_n) for seeded random
    constants, plus exact-value checks of the n=2 and n=3 polynomials."""
    rng = np.random.default_rng(seed)
    cases: list[DetCase] = []
    for n in range(2, n_max + 1):
        worst = 0.0
        for _ in range(draws):
            c = StructureConstants(tuple(rng.uniform(0.0, 2.0, n - 1)))
            point = ModelPoint(n=n, r=1.0, c=c)
            closed = det_holomorphic_closed_form(c)
            numeric = det_sym(holomorphic_block(point, "asymptotic").negated())
            worst = max(worst, abs(closed - numeric) / max(1.0, abs(closed)))
        cases.append(DetCase(n=n, max_rel_err=worst))

    exact_err = 0.0
    for _ in range(20):
        c1, c3 = (float(x) for x in rng.uniform(0.0, 2.0, 2))
        exact_err = max(
            exact_err,
            abs(det_holomorphic_closed_form((c1,)) - (2.0 * c1 * c1 + 4.0)),
            abs(
                det_holomorphic_closed_form((c1, c3))
                - (0.75 * c1 * c1 * c3 * c3 + 2.0 * c1 * c1 + 2.0 * c3 * c3 + 4.0)
            ),
        )

    at_two = []
    for n in range(2, n_max + 1):
        det2 = det_holomorphic_closed_form(StructureConstants.constant(n - 1, 2.0))
        at_two.append((n, det2, float(2**n * (n + 1))))
    return DetReport(
        passed=bool(all(c.max_rel_err <= rel_tol for c in cases) and exact_err <= 1e-12),
        rel_tol=rel_tol, cases=tuple(cases), exact_value_max_err=float(exact_err),
        reference_det_at_2=tuple(at_two),
    )


# ---------------------------------------------------------------------------
# blocks: displayed 6x6 operator at n=2 and exact 2x2 nonpositivity
# ---------------------------------------------------------------------------

MATRIX7_C_VALUES = (0.0, 1.0, 2.0)
MATRIX7_TOL = 1e-14
BLOCK_GRID = (0.0, 0.5, 1.0, 1.5, 2.0)
BLOCK_RADII_COUNT = 50
BLOCK_EIG_TOL = 1e-12


def reference_operator_n2(c: float) -> np.ndarray:
    """The displayed asymptotic 6x6 operator for n=2 in the block basis
    ((1,2),(3,4) | (1,3),(2,4) | (1,4),(2,3))."""
    m = np.zeros((6, 6))
    m[0, 0] = -1.0 - 0.75 * c * c
    m[0, 1] = m[1, 0] = -c
    m[1, 1] = -4.0
    m[2, 2] = -2.0 + 0.25 * c * c
    m[2, 3] = m[3, 2] = -0.5 * c
    m[3, 3] = -1.0
    m[4, 4] = -1.0
    m[4, 5] = m[5, 4] = 0.5 * c
    m[5, 5] = -2.0 + 0.25 * c * c
    return m


@dataclass(frozen=True)
class BlocksReport:
    passed: bool
    matrix_reproduction_max_err: float
    matrix_tol: float
    hv_exact_max_eigenvalue: float
    dh_exact_max_eigenvalue: float
    block_eig_tol: float
    radii: tuple[float, float, int]


def blocks_report(grid=BLOCK_GRID, radii_count: int = BLOCK_RADII_COUNT,
                  matrix_tol: float = MATRIX7_TOL,
                  eig_tol: float = BLOCK_EIG_TOL) -> BlocksReport:
    """Reproduce the displayed n=2 asymptotic operator entry-for-entry and
    check that both exact 2x2 block families stay nonpositive over a grid of
    structure constants and radii."""
    basis2 = build_wedge_basis(2)
    matrix_err = 0.0
    for c in MATRIX7_C_VALUES:
        point = ModelPoint.at(2, 1.0, c)
        got = assemble_operator(curvature_table(point, "asymptotic"), basis2).data
        matrix_err = max(matrix_err, float(np.abs(got - reference_operator_n2(c)).max()))

    radii = np.linspace(1e-3, 10.0, radii_count)
    hv_max = -np.inf
    for c in grid:
        for r in radii:
            block = mixed_block(ModelPoint.at(2, float(r), c), ((1, 3), (2, 4)), "exact")
            hv_max = max(hv_max, float(eigen_sym(block).eigenvalues[-1]))
    dh_max = -np.inf
    for ci in grid:
        for ck in grid:
            for r in radii:
                block = mixed_block(
                    ModelPoint.at(3, float(r), (ci, ck)), ((1, 3), (2, 4)), "exact"
                )
                dh_max = max(dh_max, float(eigen_sym(block).eigenvalues[-1]))
    return BlocksReport(
        passed=matrix_err <= matrix_tol and hv_max <= eig_tol and dh_max <= eig_tol,
        matrix_reproduction_max_err=matrix_err, matrix_tol=matrix_tol,
        hv_exact_max_eigenvalue=hv_max, dh_exact_max_eigenvalue=dh_max,
        block_eig_tol=eig_tol, radii=(1e-3, 10.0, radii_count),
    )


# ---------------------------------------------------------------------------
# definiteness: leading-minor cascade and the combined decomposition
# ---------------------------------------------------------------------------

MINORS_N_MAX = 8
MINORS_DRAWS = 100
COMBINED_NS = (2, 3, 4)
COMBINED_DRAWS = 50
COMBINED_R_RANGE = (3.0, 10.0)
COMBINED_EIG_TOL = 1e-9


@dataclass(frozen=True)
class DefinitenessSuiteReport:
    passed: bool
    minors_all_positive: bool
    min_leading_minor: float
    combined_max_eigenvalue: float
    combined_tol: float


def definiteness_report(seed: int = 0, n_max: int = MINORS_N_MAX,
                        draws: int = MINORS_DRAWS,
                        combined_tol: float = COMBINED_EIG_TOL) -> DefinitenessSuiteReport:
    """Leading principal minors of the negated asymptotic holomorphic block
    stay positive for random constants in [0, 2), and the proof-style
    decomposition (asymptotic holomorphic block + exact 2x2 blocks) has
    nonpositive spectrum for random constants at radii >= 3."""
    rng = np.random.default_rng(seed)
    min_minor = np.inf
    for n in range(2, n_max + 1):
        for _ in range(draws):
            # numpy's uniform is half-open, so draws stay strictly below 2
            c = StructureConstants(tuple(rng.uniform(0.0, 2.0, n - 1)))
            block = holomorphic_block(ModelPoint(n=n, r=1.0, c=c), "asymptotic").negated()
            min_minor = min(min_minor, float(leading_principal_minors(block).min()))
    minors_ok = bool(min_minor > 0.0)

    combined_max = -np.inf
    for n in COMBINED_NS:
        basis = build_wedge_basis(n)
        for _ in range(COMBINED_DRAWS):
            c = StructureConstants(tuple(rng.uniform(0.0, 2.0, n - 1)))
            r = float(rng.uniform(*COMBINED_R_RANGE))
            point = ModelPoint(n=n, r=r, c=c)
            hol = holomorphic_block(point, "asymptotic")
            combined_max = max(combined_max, float(eigen_sym(hol).eigenvalues[-1]))
            exact_op = assemble_operator(component_table(point), basis)
            for block in (exact_op.submatrix(m) for m in basis.blocks[1:]):
                combined_max = max(combined_max, float(eigen_sym(block).eigenvalues[-1]))
    return DefinitenessSuiteReport(
        passed=bool(minors_ok and combined_max <= combined_tol),
        minors_all_positive=minors_ok, min_leading_minor=float(min_minor),
        combined_max_eigenvalue=float(combined_max), combined_tol=combined_tol,
    )
