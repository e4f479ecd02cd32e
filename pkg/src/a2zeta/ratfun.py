"""Exact rational functions in q and t = q^{-s}, and the A2 closed forms.

Values are kept as a reduced fraction of integer polynomials in (q, t);
negative powers of q are cleared into the denominator.  Polynomial
arithmetic and gcds are delegated to sympy.
"""

from fractions import Fraction

import sympy

q, t = sympy.symbols("q t")
_GENS = (q, t)


class RatFunQT:
    __slots__ = ("num", "den")

    def __init__(self, expr):
        if isinstance(expr, RatFunQT):
            self.num, self.den = expr.num, expr.den
            return
        expr = sympy.sympify(expr)
        free = expr.free_symbols - {q, t}
        if free:
            raise ValueError(f"unexpected symbols {free}")
        n, d = sympy.fraction(sympy.cancel(sympy.together(expr)))
        num = sympy.Poly(n, *_GENS, domain="ZZ")
        den = sympy.Poly(d, *_GENS, domain="ZZ")
        if den.is_zero:
            raise ZeroDivisionError("zero denominator")
        g = num.gcd(den)
        num, den = num.exquo(g), den.exquo(g)
        if den.LC() < 0:
            num, den = -num, -den
        self.num, self.den = num, den

    @classmethod
    def _of(cls, expr):
        return expr if isinstance(expr, RatFunQT) else cls(expr)

    def to_sympy(self):
        return self.num.as_expr() / self.den.as_expr()

    def __add__(self, other):
        o = self._of(other)
        return RatFunQT((self.num * o.den + o.num * self.den).as_expr()
                        / (self.den * o.den).as_expr())

    __radd__ = __add__

    def __neg__(self):
        return RatFunQT(-self.to_sympy())

    def __sub__(self, other):
        return self + (-self._of(other))

    def __rsub__(self, other):
        return self._of(other) - self

    def __mul__(self, other):
        o = self._of(other)
        return RatFunQT((self.num * o.num).as_expr() / (self.den * o.den).as_expr())

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._of(other)
        if o.num.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunQT((self.num * o.den).as_expr() / (self.den * o.num).as_expr())

    def __rtruediv__(self, other):
        return self._of(other) / self

    def __pow__(self, k: int):
        return RatFunQT(self.to_sympy() ** k)

    def __eq__(self, other):
        try:
            o = self._of(other)
        except (TypeError, ValueError, sympy.SympifyError):
            return NotImplemented
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RatFunQT({self.to_sympy()})"

    def subs_q(self, value):
        """Substitute a rational number for q; returns a sympy expression in t."""
        return sympy.cancel(self.to_sympy().subs(q, sympy.Rational(value)))

    def evaluate(self, q_value, t_value) -> Fraction:
        v = self.to_sympy().subs({q: sympy.Rational(q_value), t: sympy.Rational(t_value)})
        v = sympy.Rational(v)
        return Fraction(int(v.p), int(v.q))


def invert_q(f: RatFunQT) -> RatFunQT:
    """q -> q^{-1}, acting on every power of q including the q^{-s} hidden in t."""
    return RatFunQT(f.to_sympy().subs({q: 1 / q, t: 1 / t}, simultaneous=True))


def u_poly(variant: str):
    if variant == "sl3":
        return lambda X: X ** 3 + X ** 2 - X - 1 - 1 / X
    if variant == "su3":
        return lambda X: -X ** 3 + X ** 2 - X + 1 - 1 / X
    raise ValueError(f"unknown variant {variant!r}")


def u_value(variant: str, x) -> Fraction:
    return u_poly(variant)(Fraction(x))


def poincare_closed(variant: str) -> RatFunQT:
    """Closed form of P(s+2), with t = q^{-s}."""
    u = u_poly(variant)
    num = 1 + u(q) * q ** -3 * t ** 2 + u(1 / q) * q ** -2 * t ** 3 + q ** -5 * t ** 5
    return RatFunQT(num / ((1 - q * t ** 2) * (1 - q ** 2 * t ** 3)))


def zeta_closed_form(variant: str, m: int) -> RatFunQT:
    return RatFunQT(q ** (8 * m)) * poincare_closed(variant)


def funeq_check(variant: str = None, f: RatFunQT = None) -> bool:
    P = poincare_closed(variant) if f is None else f
    return invert_q(P) == RatFunQT(q ** 8) * P


def series_in_t(f: RatFunQT, q_value, k_max: int) -> list:
    """Exact t-expansion coefficients c_0..c_{k_max} at a rational q."""
    qv = sympy.Rational(q_value)
    num = sympy.Poly(f.num.as_expr().subs(q, qv), t)
    den = sympy.Poly(f.den.as_expr().subs(q, qv), t)
    nc = [Fraction(int(c.p), int(c.q)) for c in reversed(num.all_coeffs())]
    dc = [Fraction(int(c.p), int(c.q)) for c in reversed(den.all_coeffs())]
    if not dc or dc[0] == 0:
        raise ZeroDivisionError("denominator has no unit constant term at this q")
    out = []
    for k in range(k_max + 1):
        v = nc[k] if k < len(nc) else Fraction(0)
        for i in range(1, min(k, len(dc) - 1) + 1):
            v -= dc[i] * out[k - i]
        out.append(v / dc[0])
    return out


def _binomial_real_part(factor):
    """Real part of the zeros of a factor g(q^lam t) with g a product of cyclotomic polynomials.

    The exponents (a, b) of q^a t^b must lie on one line a = a0 + lam b; then every zero
    has |q^lam t| = 1, so Re s = lam.
    """
    terms = factor.terms()
    if len(terms) < 2:
        return None
    (a0, b0), _ = terms[-1]
    slopes = {Fraction(a - a0, b - b0) for (a, b), _ in terms[:-1] if b != b0}
    if len(slopes) != 1 or any(b == b0 for (a, b), _ in terms[:-1]):
        return None
    lam = slopes.pop()
    z = sympy.Symbol("z")
    g = sympy.Poly(sum(c * z ** (b - b0) for (_, b), c in terms), z)
    _, parts = g.factor_list()
    if not all(sympy.Poly(p, z).is_cyclotomic for p, _ in parts):
        return None
    return lam


def pole_real_parts(f: RatFunQT) -> list:
    """Sorted real parts of poles in s, reading each denominator factor as 1 - q^{a - b s}."""
    out = set()
    _, factors = f.den.factor_list()
    for fac, _mult in factors:
        if len(fac.terms()) == 1:  # monomial, a unit in the s-plane
            continue
        rp = _binomial_real_part(fac)
        if rp is None:
            raise ValueError(f"unsupported denominator factor {fac.as_expr()}")
        out.add(rp)
    return sorted(out)


def abscissa(f: RatFunQT) -> Fraction:
    return max(pole_real_parts(f))


def _qs_monomial(a: int, b: int) -> str:
    if b == 0:
        return f"q^{a}" if a not in (0, 1) else ("q" if a == 1 else "1")
    s = f"{a}-{b}s" if a else f"-{b}s"
    if b == 1:
        s = s.replace("-1s", "-s")
    return f"q^({s})"


def pretty(f: RatFunQT) -> str:
    """Render with t-monomials written as q^(a-bs)."""
    def side(poly):
        parts = []
        for (a, b), c in sorted(poly.terms(), key=lambda x: (x[0][1], x[0][0])):
            mono = _qs_monomial(a, b)
            if mono == "1":
                parts.append(f"{c}")
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") or "0"
    return f"({side(f.num)}) / ({side(f.den)})"
