"""Toric evaluation codes: generator matrices, exact [n, k, d], N_P.

A code is built by evaluating every monomial x^a, a a lattice point of P,
at all (q-1)^m points of the algebraic torus (F_q^*)^m.  The evaluation
order is fixed: torus points are enumerated in lexicographic order of
their coordinate discrete logs (base = the field's canonical generator),
so generator matrices are reproducible across platforms.

Two minimum-weight engines are provided.  The exhaustive engine sweeps
one codeword per projective message class (first nonzero coordinate
fixed to 1) and is guarded by a coordinate-update budget.  The multi-
information-set engine (Brouwer-Zimmermann) enumerates codewords by
information weight over greedily chosen disjoint information sets and
terminates once the accumulated lower bound meets the best weight found.

Weight sweeps run as batched matrix products: residues stay below 2^24,
so float32 BLAS products are exact; extension fields are handled one
base-p digit at a time using the power-basis structure constants.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .bounds import (BoundReport, dps_volume_bound, griesmer_max_d, gv_max_d,
                     simplex_bound, width_one_final_bound, char_of)
from .geometry import Polytope, lattice_width, normalized_volume
from .gfq import _log_grid, make_field
from .minklen import minkowski_length

BUDGET = 10_000_000_000  # coordinate updates allowed per exhaustive sweep
_CHUNK_COORDS = 1 << 23  # batch size target: coordinates touched per chunk


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive sweep would exceed the update budget."""


# ---------------------------------------------------------------------------
# small dense linear algebra over GF(q) (element codes, 0..q-1)

def _vec_sub(field, a, b):
    """Elementwise a - b on arrays of element codes."""
    d = field.codes_to_digits(a) + (field.p - 1) * field.codes_to_digits(b)
    return field.digits_to_codes(d)


def _vec_scale(field, s, a):
    """Elementwise s * a for a scalar code s and an array of codes."""
    if s == 0:
        return np.zeros_like(a)
    out = np.zeros_like(a)
    nz = a != 0
    logs = (field.log[a[nz]] + int(field.log[s])) % (field.q - 1)
    out[nz] = field.exp[logs]
    return out


def _row_reduce(field, rows):
    """Return indices of a maximal independent subset of ``rows``."""
    work = [r.copy() for r in rows]
    pivots = []  # (column, reduced row)
    basis = []
    for idx, r in enumerate(work):
        for col, pr in pivots:
            if r[col] != 0:
                r[:] = _vec_sub(field, r, _vec_scale(field, int(r[col]), pr))
        nz = np.flatnonzero(r)
        if nz.size:
            col = int(nz[0])
            r = _vec_scale(field, field.inv(int(r[col])), r)
            pivots.append((col, r))
            basis.append(idx)
    return basis


def _gf_inv(field, mat):
    """Inverse of a k x k matrix of element codes (Gauss-Jordan)."""
    k = mat.shape[0]
    aug = np.concatenate([mat.copy(), np.eye(k, dtype=np.int64)], axis=1)
    for i in range(k):
        piv = next((r for r in range(i, k) if aug[r, i] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        if piv != i:
            aug[[i, piv]] = aug[[piv, i]]
        aug[i] = _vec_scale(field, field.inv(int(aug[i, i])), aug[i])
        for r in range(k):
            if r != i and aug[r, i] != 0:
                aug[r] = _vec_sub(
                    field, aug[r], _vec_scale(field, int(aug[r, i]), aug[i]))
    return aug[:, k:]


def _gf_matmul(field, a, b):
    """Exact product of code matrices a (r x k) and b (k x n)."""
    r, k = a.shape
    out = np.zeros((r, b.shape[1]), dtype=np.int64)
    for i in range(r):
        parts = [_vec_scale(field, int(a[i, j]), b[j])
                 for j in range(k) if a[i, j] != 0]
        if parts:
            total = np.zeros((b.shape[1], field.e), dtype=np.int64)
            for part in parts:
                total += field.codes_to_digits(part)
            out[i] = field.digits_to_codes(total)
    return out


# ---------------------------------------------------------------------------
# batched zero counting for message sweeps

class _WeightEngine:
    """Counts zero coordinates of m @ G for batches of message rows.

    Prime fields use one float32 product (entries < 2^24, hence exact).
    Extension fields decompose everything into base-p digits: with
    struct[s] the digit vector of x^s mod the field modulus, codeword
    digit t is sum_s (sum_{i+j=s} M_i @ G_j) * struct[s][t] mod p.
    """

    def __init__(self, field, gen):
        self.field = field
        self.n = gen.shape[1]
        self.k = gen.shape[0]
        if field.e == 1:
            self._g = gen.astype(np.float32)
        else:
            digs = field.codes_to_digits(gen)  # (k, n, e)
            self._g = [digs[:, :, j].astype(np.float32)
                       for j in range(field.e)]
            x_code = field.p  # the element represented by the monomial x
            self._struct = np.array(
                [field.codes_to_digits(field.power(x_code, s))
                 for s in range(2 * field.e - 1)], dtype=np.int64)

    def zeros(self, msgs):
        """Zero-coordinate count per row for a (b, k) batch of codes."""
        F = self.field
        if F.e == 1:
            res = (msgs.astype(np.float32) @ self._g).astype(np.int64) % F.p
            return np.count_nonzero(res == 0, axis=1)
        mdig = F.codes_to_digits(msgs)  # (b, k, e)
        mcols = [mdig[:, :, i].astype(np.float32) for i in range(F.e)]
        return self._zeros_ext(mcols, F.e, F.p)

    def _zeros_ext(self, mcols, e, p):
        conv = [None] * (2 * e - 1)
        for i in range(e):
            for j in range(e):
                prod = mcols[i] @ self._g[j]
                conv[i + j] = prod if conv[i + j] is None else conv[i + j] + prod
        zero_mask = np.ones(conv[0].shape, dtype=bool)
        for t in range(e):
            digit = np.zeros_like(conv[0])
            for s in range(2 * e - 1):
                c = int(self._struct[s, t])
                if c:
                    digit += c * conv[s]
            zero_mask &= digit.astype(np.int64) % p == 0
        return np.count_nonzero(zero_mask, axis=1)


# ---------------------------------------------------------------------------
# code construction

@dataclass(frozen=True)
class ToricCode:
    field: object
    polytope: Polytope
    exponents: tuple       # monomial basis: lattice points of P, sorted
    matrix: np.ndarray     # k x n full-rank generator (element codes)
    n: int
    k: int
    injective: bool


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int
    N_P: int
    griesmer_d: int
    gv_d: int
    bound_reports: tuple   # pairs (BoundReport, holds: bool or None)


def build_code(P, q):
    """Evaluation code of the lattice points of P on the torus (F_q^*)^m."""
    field = make_field(q)
    pts = sorted(P.lattice_points)
    if not pts:
        raise ValueError("polytope has no lattice points")
    m = P.ambient
    exps = np.array(pts, dtype=np.int64)
    widths = exps.max(axis=0) - exps.min(axis=0)
    if np.any(widths > q - 2):
        warnings.warn(
            f"coordinate width {int(widths.max())} exceeds q-2={q - 2}; "
            "distinct lattice points may evaluate identically",
            stacklevel=2)
    reduced = exps % (q - 1)
    injective = len({tuple(r) for r in reduced}) == len(pts)
    grid = _log_grid(q, m)                      # (n, m) discrete logs
    logs = (reduced @ grid.T) % (q - 1)         # (|P|, n)
    evals = field.exp[logs]
    basis = _row_reduce(field, list(evals))
    gen = evals[basis]
    return ToricCode(field=field, polytope=P, exponents=tuple(pts),
                     matrix=gen, n=grid.shape[0], k=len(basis),
                     injective=injective)


# ---------------------------------------------------------------------------
# minimum-weight engines

def _message_batches(q, k, lead, chunk):
    """Projective messages with first nonzero coordinate ``lead`` (set to
    1), remaining coordinates sweeping lexicographically, in chunks."""
    free = k - lead - 1
    total = q ** free
    place = np.array([q ** (free - 1 - j) for j in range(free)],
                     dtype=object if q ** free > 2 ** 62 else np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        msgs = np.zeros((idx.size, k), dtype=np.int64)
        msgs[:, lead] = 1
        for j in range(free):
            msgs[:, lead + 1 + j] = (idx // int(place[j])) % q
        yield msgs


def exhaustive_cost(q, k, n):
    """Coordinate updates needed by the exhaustive sweep."""
    return (q ** k - 1) // (q - 1) * n


def min_weight_exhaustive(code, early_stop=None):
    """Exact minimum weight by projective codeword enumeration.

    ``early_stop``: return as soon as a weight at most this value is
    seen.  Raises BudgetExceeded when the sweep would perform more than
    BUDGET coordinate updates.
    """
    q, k, n = code.field.q, code.k, code.n
    if exhaustive_cost(q, k, n) > BUDGET:
        raise BudgetExceeded(
            f"exhaustive sweep needs {exhaustive_cost(q, k, n):.2e} "
            f"coordinate updates (budget {BUDGET:.0e}); use BZ "
            "(min_weight_bz)")
    engine = _WeightEngine(code.field, code.matrix)
    chunk = max(1, _CHUNK_COORDS // n)
    best = n
    for lead in range(k):
        for msgs in _message_batches(q, k, lead, chunk):
            w = n - engine.zeros(msgs).max()
            if w < best:
                best = int(w)
                if early_stop is not None and best <= early_stop:
                    return best
    return best


def _information_sets(field, gen):
    """Greedy disjoint information sets with deficiencies.

    Returns a list of (columns, deficiency): each set has k columns whose
    submatrix is invertible; ``deficiency`` counts columns borrowed from
    earlier sets once fresh columns run out of rank.
    """
    k, n = gen.shape
    used = np.zeros(n, dtype=bool)
    sets = []
    while True:
        cols = _row_reduce(field, list(gen[:, ~used].T))
        fresh = np.flatnonzero(~used)[cols]
        if fresh.size == 0:
            break
        chosen = list(fresh)
        if len(chosen) < k:
            # complete to an invertible k-subset with already-used columns
            for c in np.flatnonzero(used):
                trial = chosen + [int(c)]
                if len(_row_reduce(field, list(gen[:, trial].T))) == len(trial):
                    chosen = trial
                    if len(chosen) == k:
                        break
            if len(chosen) < k:
                break
        sets.append((tuple(int(c) for c in chosen), k - fresh.size))
        used[fresh] = True
    return sets


def min_weight_bz(code, verbose=False):
    """Exact minimum weight via enumeration by information weight.

    For each disjoint information set, codewords are generated from
    weight-w information vectors (first nonzero entry 1) against the
    systematized generator.  After finishing weight w on all sets, every
    unseen codeword has weight at least sum_i max(0, w+1 - deficiency_i),
    which stops the sweep once it reaches the best weight found.
    """
    field, gen = code.field, code.matrix
    q, k, n = field.q, code.k, code.n
    if k > 24:
        raise ValueError("BZ engine is configured for k <= 24")
    sets = _information_sets(field, gen)
    systems = []
    for cols, delta in sets:
        inv = _gf_inv(field, gen[:, cols])
        systems.append((_WeightEngine(field, _gf_matmul(field, inv, gen)),
                        delta))
    chunk = max(1, _CHUNK_COORDS // n)
    best = n
    for w in range(1, k + 1):
        for done, (engine, _) in enumerate(systems):
            for supp in combinations(range(k), w):
                for vals in _message_batches(q, w, 0, chunk):
                    live = vals[np.all(vals != 0, axis=1)]
                    if live.size == 0:
                        continue
                    msgs = np.zeros((live.shape[0], k), dtype=np.int64)
                    msgs[:, list(supp)] = live
                    best = min(best, int(n - engine.zeros(msgs).max()))
            lower = sum(max(0, w + 1 - d) for _, d in systems[:done + 1])
            lower += sum(max(0, w - d) for _, d in systems[done + 1:])
            if lower >= best:
                if verbose:
                    print(f"bz: stop at w={w}, set {done + 1}/{len(systems)},"
                          f" bound {lower} >= best {best}")
                return best
    return best


def min_weight(code, engine="auto", early_stop=None):
    if engine == "exhaustive":
        return min_weight_exhaustive(code, early_stop=early_stop)
    if engine == "bz":
        return min_weight_bz(code)
    if engine != "auto":
        raise ValueError("engine must be auto, exhaustive, or bz")
    if exhaustive_cost(code.field.q, code.k, code.n) <= BUDGET:
        return min_weight_exhaustive(code, early_stop=early_stop)
    return min_weight_bz(code)


def max_zero_count(P, q, engine="auto"):
    """N_P: the largest torus zero count over nonzero f supported on P."""
    code = build_code(P, q)
    return code.n - min_weight(code, engine=engine)


# ---------------------------------------------------------------------------
# parameter report

def params_report(P, q, engine="auto"):
    code = build_code(P, q)
    d = min_weight(code, engine=engine)
    n_p = code.n - d
    g_d = griesmer_max_d(code.n, code.k, q)
    gv_d = gv_max_d(code.n, code.k, q)
    L, _ = minkowski_length(P)
    char_ok = char_of(q) > 41
    pts = np.array(code.exponents, dtype=np.int64)
    in_box = bool(np.all(pts.max(axis=0) - pts.min(axis=0) <= q - 2))
    box_flag = ("P fits in a translate of [0,q-2]^m", in_box)
    reports = [
        (BoundReport("griesmer", g_d, (), (("n", code.n), ("k", code.k))),
         d <= g_d),
        (BoundReport("gilbert_varshamov", gv_d, (),
                     (("n", code.n), ("k", code.k))), None),
        (BoundReport("simplex", simplex_bound(L, q, n=P.ambient),
                     (box_flag,), (("L", L),)),
         n_p <= simplex_bound(L, q, n=P.ambient) if in_box else None),
    ]
    if P.dim == 3 and L == 1:
        v = dps_volume_bound(normalized_volume(P), q)
        reports.append((BoundReport(
            "dps_volume", v, (("char > 41", char_ok), box_flag),
            (("vol3", normalized_volume(P)),)),
            n_p <= v if char_ok and in_box else None))
    if P.ambient == 3 and lattice_width(P)[0] == 1:
        v = width_one_final_bound(L, q)
        reports.append((BoundReport(
            "width_one_final", v, (("q >= beta(P)", None), box_flag),
            (("L", L),)),
            n_p <= v if in_box else None))
    return CodeParams(n=code.n, k=code.k, d=d, N_P=n_p,
                      griesmer_d=g_d, gv_d=gv_d,
                      bound_reports=tuple(reports))
