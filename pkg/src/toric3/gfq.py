"""Finite fields GF(q), Laurent polynomials, and exact torus zero counts.

Field elements are encoded as integers 0..q-1 whose base-p digits are the
coefficients of the residue polynomial (for prime fields this is the
usual residue encoding).  Multiplication runs through log/exp tables of a
fixed smallest generator; addition is digitwise mod p.  The construction
is deterministic: the modulus is the first irreducible monic polynomial
of degree e in the base-p integer encoding of its non-leading
coefficients, and the generator is the smallest element (in the integer
encoding) of multiplicative order q - 1.

Torus scans are vectorized: a point of (F_q^*)^n is represented by the
discrete logs of its coordinates, so a monomial x^a evaluates to
g^(<a, l> mod (q-1)) and whole evaluation matrices come from one integer
matrix product.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


def _factor_prime_power(q):
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = None
    for cand in range(2, int(q ** 0.5) + 1):
        if q % cand == 0:
            p = cand
            break
    if p is None:
        return q, 1
    e = 0
    m = q
    while m % p == 0:
        m //= p
        e += 1
    if m != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


def _poly_mulmod(a, b, modulus, p):
    """Multiply coefficient lists (low degree first) mod (modulus, p).

    ``modulus`` is the full monic coefficient list of degree e."""
    e = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for d in range(len(prod) - 1, e - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for i in range(e + 1):
                prod[d - e + i] = (prod[d - e + i] - c * modulus[i]) % p
    out = prod[:e]
    out += [0] * (e - len(out))
    return out


def _irreducible(poly, p):
    """Trial division by all monic polynomials of degree <= deg/2."""
    e = len(poly) - 1
    for d in range(1, e // 2 + 1):
        for m in range(p ** d):
            div = _int_digits(m, p, d) + [1]
            if _poly_rem_is_zero(poly, div, p):
                return False
    return True


def _poly_rem_is_zero(a, b, p):
    rem = list(a)
    db = len(b) - 1
    for d in range(len(rem) - 1, db - 1, -1):
        c = rem[d]
        if c:
            for i in range(db + 1):
                rem[d - db + i] = (rem[d - db + i] - c * b[i]) % p
    return not any(rem[:db])


def _int_digits(m, p, e):
    out = []
    for _ in range(e):
        out.append(m % p)
        m //= p
    return out


def _digits_int(digits, p):
    v = 0
    for d in reversed(digits):
        v = v * p + d
    return v


class FiniteField:
    """GF(q) with log/exp tables over a deterministic modulus/generator."""

    def __init__(self, q):
        if q > 1 << 20:
            raise ValueError("q must be at most 2^20")
        p, e = _factor_prime_power(q)
        self.q = q
        self.p = p
        self.e = e
        if e == 1:
            self.modulus = (0, 1)  # the polynomial x, i.e. GF(p) itself
        else:
            self.modulus = self._find_modulus(p, e)
        self._digit_table = np.array(
            [_int_digits(k, p, e) for k in range(q)], dtype=np.int64)
        self._pow_p = np.array([p ** i for i in range(e)], dtype=np.int64)
        self.generator = self._find_generator()
        self._build_tables()

    @staticmethod
    def _find_modulus(p, e):
        for m in range(1, p ** e):
            poly = _int_digits(m, p, e) + [1]
            if _irreducible(poly, p):
                return tuple(poly)
        raise RuntimeError("no irreducible polynomial found")

    # -- scalar arithmetic on integer-encoded elements ---------------------

    def add(self, a, b):
        if self.e == 1:
            return (a + b) % self.p
        da = _int_digits(a, self.p, self.e)
        db = _int_digits(b, self.p, self.e)
        return _digits_int([(x + y) % self.p for x, y in zip(da, db)], self.p)

    def neg(self, a):
        if self.e == 1:
            return (-a) % self.p
        da = _int_digits(a, self.p, self.e)
        return _digits_int([(-x) % self.p for x in da], self.p)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def _mul_raw(self, a, b):
        if self.e == 1:
            return (a * b) % self.p
        da = _int_digits(a, self.p, self.e)
        db = _int_digits(b, self.p, self.e)
        return _digits_int(
            _poly_mulmod(da, db, list(self.modulus), self.p), self.p)

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        return int(self.exp[(int(self.log[a]) + int(self.log[b]))
                            % (self.q - 1)])

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return int(self.exp[(-int(self.log[a])) % (self.q - 1)])

    def power(self, a, n):
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0 if n else 1
        return int(self.exp[(int(self.log[a]) * n) % (self.q - 1)])

    # -- table construction ------------------------------------------------

    def _element_order(self, a):
        x = a
        for k in range(1, self.q):
            if x == 1:
                return k
            x = self._mul_raw(x, a)
        raise RuntimeError("order computation failed")

    def _find_generator(self):
        for g in range(1, self.q):
            if self._element_order(g) == self.q - 1:
                return g
        raise RuntimeError("no generator found")

    def _build_tables(self):
        q = self.q
        self.exp = np.zeros(q - 1, dtype=np.int64)
        self.log = np.zeros(q, dtype=np.int64)
        x = 1
        for i in range(q - 1):
            self.exp[i] = x
            self.log[x] = i
            x = self._mul_raw(x, self.generator)
        if x != 1:
            raise RuntimeError("generator tables inconsistent")

    # -- vectorized helpers used by the scan and code modules --------------

    def codes_to_digits(self, codes):
        """(..., ) int array of element codes -> (..., e) digit array."""
        return self._digit_table[codes]

    def digits_to_codes(self, digits):
        return (digits % self.p) @ self._pow_p

    def add_many(self, code_arrays):
        """Field sum of a list of equal-shape element-code arrays."""
        total = np.zeros(code_arrays[0].shape + (self.e,), dtype=np.int64)
        for c in code_arrays:
            total += self._digit_table[c]
        return self.digits_to_codes(total)

    def __repr__(self):
        return f"FiniteField(q={self.q})"


@lru_cache(maxsize=None)
def make_field(q):
    return FiniteField(q)


# ---------------------------------------------------------------------------
# Laurent polynomials

@dataclass(frozen=True)
class LaurentPolynomial:
    """Sparse Laurent polynomial: exponent vector -> nonzero coefficient."""

    field: FiniteField
    terms: tuple  # sorted tuple of (exponent tuple, coefficient code)

    @staticmethod
    def make(field, term_map):
        terms = tuple(sorted((tuple(int(x) for x in a), int(c) % field.q)
                             for a, c in term_map.items() if int(c) % field.q))
        return LaurentPolynomial(field, terms)

    @property
    def support(self):
        return [a for a, _ in self.terms]

    @property
    def n(self):
        return len(self.terms[0][0]) if self.terms else 0

    def is_zero(self):
        return not self.terms

    def evaluate_log(self, logs):
        """Evaluate at the torus point whose coordinate discrete logs are
        ``logs``; returns the element code."""
        F = self.field
        acc = 0
        for a, c in self.terms:
            k = (int(F.log[c]) + sum(x * y for x, y in zip(a, logs))) \
                % (F.q - 1)
            acc = F.add(acc, int(F.exp[k]))
        return acc


def _term_value_logs(f, loggrid):
    """Logs of each term's value on the whole torus: (N, m) int array."""
    F = f.field
    exps = np.array([a for a, _ in f.terms], dtype=np.int64) % (F.q - 1)
    clogs = np.array([int(F.log[c]) for _, c in f.terms], dtype=np.int64)
    return (loggrid @ exps.T + clogs) % (F.q - 1)


def _log_grid(q, n):
    axes = [np.arange(q - 1, dtype=np.int64)] * n
    grids = np.meshgrid(*axes, indexing="ij")
    return np.stack([g.ravel() for g in grids], axis=1)


def _zero_mask(f):
    F = f.field
    if f.is_zero():
        raise ValueError("zero polynomial")
    grid = _log_grid(F.q, f.n)
    vals = F.exp[_term_value_logs(f, grid)]
    digit_sum = F.codes_to_digits(vals).sum(axis=1)
    codes = F.digits_to_codes(digit_sum)
    return codes == 0


def count_zeros(f):
    """N_f: number of zeros of f in the torus (F_q^*)^n, by exact scan."""
    return int(np.count_nonzero(_zero_mask(f)))


def common_zero_count(f, g):
    if f.field is not g.field and f.field.q != g.field.q:
        raise ValueError("fields differ")
    if f.n != g.n:
        raise ValueError("torus dimension mismatch")
    return int(np.count_nonzero(_zero_mask(f) & _zero_mask(g)))


def multiply(f, g):
    """Product polynomial over the common field."""
    F = f.field
    out = {}
    for a, c in f.terms:
        for b, d in g.terms:
            key = tuple(x + y for x, y in zip(a, b))
            out[key] = F.add(out.get(key, 0), F.mul(c, d))
    return LaurentPolynomial.make(F, out)


def monomial_substitution(f, phi):
    """Apply an affine unimodular map to the exponent vectors of f.

    The translation part multiplies by a monomial, which is invertible on
    the torus, so N_f is unchanged."""
    F = f.field
    out = {}
    for a, c in f.terms:
        b = phi(a)
        out[b] = F.add(out.get(b, 0), c)
    return LaurentPolynomial.make(F, out)


def random_polynomial(P, field, seed):
    """Uniformly random element of L_P (coefficients over the lattice
    points of P, not all zero), reproducible from the integer seed via
    Python's Mersenne Twister."""
    pts = P.lattice_points
    rng = random.Random(seed)
    while True:
        coeffs = [rng.randrange(field.q) for _ in pts]
        if any(coeffs):
            return LaurentPolynomial.make(
                field, dict(zip(pts, coeffs)))


def width_one_split(f):
    """Split f = f_0 + z f_1 after translating the support to z in {0,1}.

    Returns the bivariate pieces (f_0, f_1).  Raises if the z-width of the
    support is not exactly 1 (a z-independent f would give f_1 = 0)."""
    if f.is_zero():
        raise ValueError("zero polynomial")
    if f.n != 3:
        raise ValueError("width_one_split needs a trivariate polynomial")
    zs = [a[2] for a, _ in f.terms]
    lo, hi = min(zs), max(zs)
    if hi - lo != 1:
        raise ValueError("support z-width must be exactly 1")
    f0 = {(a[0], a[1]): c for a, c in f.terms if a[2] == lo}
    f1 = {(a[0], a[1]): c for a, c in f.terms if a[2] == hi}
    return (LaurentPolynomial.make(f.field, f0),
            LaurentPolynomial.make(f.field, f1))
