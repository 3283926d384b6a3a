"""Positive homogeneous symbols and their exact derivative tensors.

Two representations are supported, both with closed-form derivatives:

* elliptic homogeneous polynomials  sigma(xi) = sum_a c_a xi^a, |a| = m;
* metric powers                     sigma(xi) = (xi^T q xi)^(m/2), q SPD.

Symmetric k-linear forms (the derivative tensors and gradient tensor
powers) are stored packed by multi-index; evaluation handles the
multiplicities.
"""

import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._grids import validation_grid
from .errors import InvalidSymbol, UnsupportedOrder, ValidationError, ZeroArgument


# ---------------------------------------------------------------------------
# multi-index bookkeeping

@lru_cache(maxsize=None)
def multi_indices(dim, order):
    """Canonical tuple of multi-indices of length `dim` with |alpha| = order."""
    out = []
    for combo in itertools.combinations_with_replacement(range(dim), order):
        alpha = [0] * dim
        for i in combo:
            alpha[i] += 1
        out.append(tuple(alpha))
    return tuple(out)


def multinomial(alpha):
    """Number of index tuples realizing the multi-index alpha."""
    k = sum(alpha)
    out = 1
    for a in alpha:
        out *= math.comb(k, a)
        k -= a
    return out


def _tuple_to_alpha(idx, dim):
    alpha = [0] * dim
    for i in idx:
        alpha[i] += 1
    return tuple(alpha)


class SymTensor:
    """Symmetric k-linear form on R^n, packed by multi-index.

    entries[alpha] is the value of the underlying symmetric array at any
    index tuple whose occurrence counts equal alpha. Order 0 is a scalar,
    order 1 a covector.
    """

    __slots__ = ("dim", "order", "entries")

    def __init__(self, dim, order, entries=None):
        self.dim = int(dim)
        self.order = int(order)
        self.entries = {}
        if entries:
            for alpha, v in entries.items():
                if len(alpha) != self.dim or sum(alpha) != self.order:
                    raise ValidationError(f"entries: bad multi-index {alpha}")
                if v != 0.0:
                    self.entries[tuple(alpha)] = float(v)

    @classmethod
    def from_dense(cls, arr):
        arr = np.asarray(arr, dtype=float)
        order = arr.ndim
        dim = arr.shape[0] if order else 1
        if order == 0:
            return cls(1, 0, {(0,): float(arr)})
        entries = {}
        for alpha in multi_indices(dim, order):
            idx = tuple(i for i, a in enumerate(alpha) for _ in range(a))
            entries[alpha] = float(arr[idx])
        return cls(dim, order, entries)

    def entry(self, alpha):
        return self.entries.get(tuple(alpha), 0.0)

    def to_dense(self):
        if self.order == 0:
            return np.float64(self.entry((0,) * self.dim))
        arr = np.zeros((self.dim,) * self.order)
        for idx in itertools.product(range(self.dim), repeat=self.order):
            arr[idx] = self.entry(_tuple_to_alpha(idx, self.dim))
        return arr

    def __call__(self, *vectors):
        if len(vectors) != self.order:
            raise ValidationError(
                f"vectors: order-{self.order} form takes {self.order} arguments"
            )
        if self.order == 0:
            return self.entry((0,) * self.dim)
        vs = [np.asarray(v, dtype=float) for v in vectors]
        total = 0.0
        for idx in itertools.product(range(self.dim), repeat=self.order):
            c = self.entry(_tuple_to_alpha(idx, self.dim))
            if c == 0.0:
                continue
            p = c
            for j, i in enumerate(idx):
                p *= vs[j][i]
            total += p
        return total

    def diagonal(self, x):
        """Value on (x, x, ..., x); cheap via multiplicities."""
        x = np.asarray(x, dtype=float)
        total = 0.0
        for alpha, c in self.entries.items():
            p = c * multinomial(alpha)
            for i, a in enumerate(alpha):
                p *= x[i] ** a
            total += p
        return total

    def frobenius(self):
        """Frobenius norm of the full symmetric array."""
        return math.sqrt(
            sum(multinomial(a) * v * v for a, v in self.entries.items())
        )

    def scaled(self, c):
        return SymTensor(self.dim, self.order, {a: c * v for a, v in self.entries.items()})

    def __sub__(self, other):
        if (other.dim, other.order) != (self.dim, self.order):
            raise ValidationError("tensor: dimension/order mismatch in subtraction")
        keys = set(self.entries) | set(other.entries)
        return SymTensor(
            self.dim, self.order, {a: self.entry(a) - other.entry(a) for a in keys}
        )


def tensor_power(v, k):
    """The k-fold tensor power of a covector as a SymTensor."""
    if k < 1:
        raise ValidationError("k: tensor power needs k >= 1")
    v = np.asarray(v, dtype=float)
    entries = {}
    for alpha in multi_indices(v.size, k):
        p = 1.0
        for i, a in enumerate(alpha):
            p *= v[i] ** a
        entries[alpha] = p
    return SymTensor(v.size, k, entries)


def polarize(q, points):
    """Recover omega(x_1,...,x_k) from the diagonal q(x) = omega(x,...,x).

    Signed-average identity: omega = (2^k k!)^(-1) sum over sign vectors
    eta of (prod eta_i) q(sum_j eta_j x_j). Exact for polynomial q up to
    rounding.
    """
    pts = [np.asarray(p, dtype=float) for p in points]
    k = len(pts)
    if k < 1:
        raise ValidationError("points: polarization needs k >= 1 vectors")
    total = 0.0
    for signs in itertools.product((-1.0, 1.0), repeat=k):
        v = sum(s * p for s, p in zip(signs, pts))
        total += math.prod(signs) * q(v)
    return total / (2.0**k * math.factorial(k))


# ---------------------------------------------------------------------------
# symbol representations

@dataclass(frozen=True)
class PolyForm:
    # ((exponent multi-index, coefficient), ...) sorted by multi-index
    terms: tuple


@dataclass(frozen=True)
class MetricForm:
    q: tuple  # row tuples of the SPD matrix


class HomogeneousSymbol:
    """A positive m-homogeneous function on R^n minus the origin."""

    def __init__(self, dim, degree, form):
        self.dim = int(dim)
        self.degree = float(degree)
        self.form = form
        if self.dim < 1:
            raise InvalidSymbol("dim: must be >= 1")
        if self.degree <= 0:
            raise InvalidSymbol("degree: must be > 0")
        self._validate()

    # -- constructors ------------------------------------------------------

    @classmethod
    def polynomial(cls, coeffs, dim=None):
        """Homogeneous polynomial from {multi-index: coefficient}."""
        if not coeffs:
            raise InvalidSymbol("coeffs: empty polynomial")
        items = sorted((tuple(int(e) for e in a), float(c)) for a, c in coeffs.items())
        n = dim if dim is not None else len(items[0][0])
        degs = {sum(a) for a, _ in items}
        if len(degs) != 1:
            raise InvalidSymbol("coeffs: monomials of mixed total degree")
        m = degs.pop()
        if m < 1:
            raise InvalidSymbol("coeffs: degree must be >= 1")
        for a, _ in items:
            if len(a) != n or any(e < 0 for e in a):
                raise InvalidSymbol(f"coeffs: bad exponent multi-index {a}")
        return cls(n, float(m), PolyForm(tuple(items)))

    @classmethod
    def metric_power(cls, q, degree):
        """sigma(xi) = (xi^T q xi)^(degree/2) for SPD q."""
        q = np.asarray(q, dtype=float)
        if q.ndim != 2 or q.shape[0] != q.shape[1]:
            raise InvalidSymbol("q: must be a square matrix")
        if not np.allclose(q, q.T, atol=1e-12):
            raise InvalidSymbol("q: must be symmetric")
        if np.linalg.eigvalsh(q).min() <= 0:
            raise InvalidSymbol("q: must be positive definite")
        rows = tuple(tuple(float(x) for x in row) for row in q)
        return cls(q.shape[0], degree, MetricForm(rows))

    @classmethod
    def euclidean(cls, dim, degree=2.0):
        """|xi|^degree; degree 2 is the flat Laplacian symbol."""
        return cls.metric_power(np.eye(dim), degree)

    # -- validation --------------------------------------------------------

    def _validate(self):
        omegas, _ = validation_grid(self.dim)
        vals = self.eval_many(omegas)
        self._sphere_min = float(vals.min())
        self._sphere_max = float(vals.max())
        if self._sphere_min <= 0.0:
            raise InvalidSymbol(
                f"symbol: not positive on the unit sphere (min {self._sphere_min:.3e})"
            )
        sub = omegas[:: max(1, len(omegas) // 64)]
        err = euler_check(self, sub)
        if err > 1e-10:
            raise InvalidSymbol(f"symbol: Euler identity violated (rel err {err:.2e})")

    @property
    def is_polynomial(self):
        return isinstance(self.form, PolyForm)

    @property
    def sphere_min(self):
        """Minimum over the validation grid of sigma on the unit sphere."""
        return self._sphere_min

    def sphere_min_bound(self):
        """Safe lower bound for min of sigma on the unit sphere.

        Exact for metric powers (smallest eigenvalue); for polynomials the
        grid minimum is derated by 0.9 (grid validation is a heuristic).
        """
        if isinstance(self.form, MetricForm):
            lam = np.linalg.eigvalsh(np.asarray(self.form.q)).min()
            return float(lam ** (self.degree / 2.0))
        return 0.9 * self._sphere_min

    # -- evaluation --------------------------------------------------------

    def eval(self, xi):
        xi = np.asarray(xi, dtype=float)
        if not xi.any():
            raise ZeroArgument("xi: symbol undefined at the origin")
        return float(self.eval_many(xi.reshape(1, -1))[0])

    def eval_many(self, pts):
        pts = np.asarray(pts, dtype=float)
        if isinstance(self.form, PolyForm):
            acc = np.zeros(pts.shape[0])
            for alpha, c in self.form.terms:
                term = np.full(pts.shape[0], c)
                for d, e in enumerate(alpha):
                    if e:
                        term = term * pts[:, d] ** e
                acc = acc + term
            return acc
        q = np.asarray(self.form.q)
        quad = np.einsum("ij,jk,ik->i", pts, q, pts)
        return quad ** (self.degree / 2.0)

    def grad(self, xi):
        """Gradient covector, exact."""
        return np.array(
            [self.deriv_tensor(xi, 1).entry(a) for a in multi_indices(self.dim, 1)]
        )

    def deriv_tensor(self, xi, k):
        """Order-k derivative tensor at xi as a SymTensor.

        Polynomials: exact monomial differentiation, any k. Metric powers:
        closed-form chain rule, supported for k <= 4.
        """
        xi = np.asarray(xi, dtype=float)
        if not xi.any():
            raise ZeroArgument("xi: derivatives undefined at the origin")
        if k < 0:
            raise ValidationError("k: derivative order must be >= 0")
        if k == 0:
            return SymTensor(self.dim, 0, {(0,) * self.dim: self.eval(xi)})
        if isinstance(self.form, PolyForm):
            return self._poly_deriv(xi, k)
        if k > 4:
            raise UnsupportedOrder(
                f"k: metric-power derivatives supported for k <= 4, got {k}"
            )
        return self._metric_deriv(xi, k)

    def _poly_deriv(self, xi, k):
        entries = {}
        for beta in multi_indices(self.dim, k):
            total = 0.0
            for alpha, c in self.form.terms:
                coef = c
                ok = True
                for a, b in zip(alpha, beta):
                    if b > a:
                        ok = False
                        break
                    for r in range(b):
                        coef *= a - r
                if not ok:
                    continue
                for d, (a, b) in enumerate(zip(alpha, beta)):
                    if a - b:
                        coef *= xi[d] ** (a - b)
                total += coef
            entries[beta] = total
        return SymTensor(self.dim, k, entries)

    def _metric_deriv(self, xi, k):
        # d^k (Q^p) as a partition sum: blocks of size 1 carry dQ = 2 q xi,
        # blocks of size 2 carry d^2 Q = 2q, larger blocks vanish.
        q = np.asarray(self.form.q)
        p = self.degree / 2.0
        quad = float(xi @ q @ xi)
        u = 2.0 * (q @ xi)
        qq = 2.0 * q
        dense = np.zeros((self.dim,) * k)
        for b in range(k // 2 + 1):
            a = k - 2 * b
            n_part = math.factorial(k) // (
                math.factorial(a) * math.factorial(b) * 2**b
            )
            coef = n_part * quad ** (p - (k - b))
            for i in range(k - b):
                coef *= p - i
            if coef == 0.0:
                continue
            block = np.array(coef)
            for _ in range(a):
                block = np.multiply.outer(block, u)
            for _ in range(b):
                block = np.multiply.outer(block, qq)
            dense += _symmetrize(block)
        return SymTensor.from_dense(dense)

    # -- literals ----------------------------------------------------------

    def literal(self):
        """Canonical parseable text form."""
        if isinstance(self.form, PolyForm):
            parts = []
            for alpha, c in self.form.terms:
                factors = [
                    f"x{d + 1}^{e}" if e > 1 else f"x{d + 1}"
                    for d, e in enumerate(alpha)
                    if e
                ]
                parts.append(f"{c:g}*" + "*".join(factors))
            return "poly: " + " + ".join(parts)
        rows = ",".join(
            "[" + ",".join(f"{v:g}" for v in row) + "]" for row in self.form.q
        )
        return f"metric: m={self.degree:g}; q=[{rows}]"

    def __repr__(self):
        return f"HomogeneousSymbol({self.literal()!r})"


def _symmetrize(arr):
    k = arr.ndim
    if k <= 1:
        return arr
    acc = np.zeros_like(arr)
    perms = list(itertools.permutations(range(k)))
    for perm in perms:
        acc += np.transpose(arr, perm)
    return acc / len(perms)


def euler_check(sym, grid):
    """Max relative error of <grad sigma(xi), xi> = m sigma(xi) over grid."""
    grid = np.asarray(grid, dtype=float)
    if grid.size == 0:
        raise ValidationError("grid: must be non-empty")
    worst = 0.0
    for omega in grid:
        if not omega.any():
            raise ZeroArgument("grid: contains the origin")
        s = sym.eval(omega)
        lhs = float(sym.grad(omega) @ omega)
        worst = max(worst, abs(lhs - sym.degree * s) / abs(sym.degree * s))
    return worst


# ---------------------------------------------------------------------------
# symbol literals

_TERM_RE = re.compile(r"^\s*(?:(?P<coef>[0-9.eE+-]+)\s*\*)?\s*(?P<body>x[0-9^*x\s]*)$")
_FACTOR_RE = re.compile(r"^x(?P<var>\d+)(?:\^(?P<exp>\d+))?$")


def parse_symbol(text):
    """Parse `poly: ...` / `metric: m=...; q=[[...]]` literals."""
    text = text.strip()
    if text.startswith("poly:"):
        return _parse_poly(text[len("poly:") :])
    if text.startswith("metric:"):
        return _parse_metric(text[len("metric:") :])
    raise ValidationError("symbol: literal must start with 'poly:' or 'metric:'")


def _parse_poly(body):
    # split on +/- term boundaries, leaving exponent signs (e-3) alone
    terms = re.split(r"\+", re.sub(r"(?<![eE])-", "+-", body))
    coeffs = {}
    dim = 0
    parsed = []
    for i, raw in enumerate(t for t in terms if t.strip()):
        term = raw.strip()
        sign = 1.0
        if term.startswith("-"):
            sign = -1.0
            term = term[1:].strip()
        m = _TERM_RE.match(term)
        if not m:
            raise ValidationError(f"symbol: cannot parse term {i + 1} ({raw.strip()!r})")
        coef = sign * float(m.group("coef") or 1.0)
        expo = {}
        for factor in (f.strip() for f in m.group("body").split("*")):
            fm = _FACTOR_RE.match(factor)
            if not fm:
                raise ValidationError(
                    f"symbol: cannot parse factor {factor!r} in term {i + 1}"
                )
            var = int(fm.group("var"))
            if var < 1:
                raise ValidationError(f"symbol: variable index must be >= 1 in term {i + 1}")
            expo[var - 1] = expo.get(var - 1, 0) + int(fm.group("exp") or 1)
        dim = max(dim, max(expo) + 1)
        parsed.append((expo, coef, i + 1))
    degrees = {sum(e.values()) for e, _, _ in parsed}
    if len(degrees) > 1:
        bad = next(
            i for e, _, i in parsed if sum(e.values()) != sum(parsed[0][0].values())
        )
        raise ValidationError(f"symbol: mixed-degree monomial at term {bad}")
    for expo, coef, _ in parsed:
        alpha = tuple(expo.get(d, 0) for d in range(dim))
        coeffs[alpha] = coeffs.get(alpha, 0.0) + coef
    return HomogeneousSymbol.polynomial(coeffs, dim=dim)


def _parse_metric(body):
    parts = [p.strip() for p in body.split(";")]
    degree = None
    q = None
    for part in parts:
        if not part:
            continue
        if part.startswith("m="):
            degree = float(part[2:])
        elif part.startswith("q="):
            rows = part[2:].strip()
            if not (rows.startswith("[[") and rows.endswith("]]")):
                raise ValidationError("symbol: q must look like [[...],[...]]")
            q = [
                [float(v) for v in row.split(",") if v.strip()]
                for row in rows[2:-2].split("],[")
            ]
        else:
            raise ValidationError(f"symbol: unknown metric field {part!r}")
    if degree is None or q is None:
        raise ValidationError("symbol: metric literal needs both m= and q=")
    return HomogeneousSymbol.metric_power(np.array(q), degree)
