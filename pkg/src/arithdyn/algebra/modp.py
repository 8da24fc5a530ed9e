"""Reduction of rational polynomials modulo a prime."""

from fractions import Fraction

from sympy import isprime

from ..errors import ArityError, BadPrimeError


class PolyModP:
    """Polynomial over the prime field F_p, stored as ``{exponents: residue}``."""

    __slots__ = ("variables", "prime", "terms")

    def __init__(self, variables, prime, terms):
        self.variables = tuple(variables)
        self.prime = prime
        self.terms = {e: c % prime for e, c in terms.items() if c % prime}

    def __eq__(self, other):
        return (isinstance(other, PolyModP) and self.prime == other.prime
                and self.variables == other.variables and self.terms == other.terms)

    def __hash__(self):
        return hash((self.variables, self.prime, frozenset(self.terms.items())))

    def __repr__(self):
        body = " + ".join(
            f"{c}*" + "*".join(v if e == 1 else f"{v}^{e}"
                               for v, e in zip(self.variables, exp) if e)
            if any(exp) else str(c)
            for exp, c in sorted(self.terms.items(), reverse=True)) or "0"
        return f"PolyModP({body} mod {self.prime})"

    @property
    def degree(self):
        from .poly import NEG_INF

        if not self.terms:
            return NEG_INF
        return max(sum(e) for e in self.terms)

    def __call__(self, *values):
        if len(values) == 1 and isinstance(values[0], (list, tuple)):
            values = values[0]
        return self.evaluate(values)

    def evaluate(self, values):
        p = self.prime
        if len(values) != len(self.variables):
            raise ArityError(f"expected {len(self.variables)} values")
        vals = [reduce_rational(v, p) for v in values]
        total = 0
        for exp, c in self.terms.items():
            t = c
            for v, e in zip(vals, exp):
                if e:
                    t = t * pow(v, e, p) % p
            total += t
        return total % p

    def compile(self):
        """Return a fast ``f(*ints) -> int mod p`` closure (arguments already reduced)."""
        p = self.prime
        names = [f"a{i}" for i in range(len(self.variables))]
        terms = []
        for exp, c in self.terms.items():
            factors = [str(c)] + [
                n if e == 1 else f"{n}**{e}" for n, e in zip(names, exp) if e]
            terms.append("*".join(factors))
        if not terms:
            body = "0"
        elif len(terms) <= 200:
            body = " + ".join(terms)
        else:
            body = "sum((" + ", ".join(terms) + ",))"
        src = f"lambda {', '.join(names)}: ({body}) % {p}"
        return eval(src, {})  # noqa: S307  generated from integer data only


def reduce_rational(value, prime):
    """Image of a rational number in F_p; raises if the denominator is divisible by p."""
    if isinstance(value, int):
        return value % prime
    value = Fraction(value)
    if value.denominator % prime == 0:
        raise BadPrimeError(f"{prime} divides the denominator of {value}")
    return value.numerator * pow(value.denominator, -1, prime) % prime


def poly_mod_p(poly, prime):
    """Coefficientwise reduction of a :class:`MultiPoly` modulo ``prime``."""
    if not isinstance(prime, int) or prime < 2 or not isprime(prime):
        raise ValueError(f"{prime!r} is not a prime")
    terms = {}
    for exp, c in poly.terms.items():
        if isinstance(c, Fraction) and c.denominator % prime == 0:
            mono = "*".join(
                f"{v}^{e}" for v, e in zip(poly.variables, exp) if e) or "1"
            raise BadPrimeError(
                f"prime {prime} divides the denominator of coefficient {c} "
                f"of monomial {mono}")
        terms[exp] = reduce_rational(c, prime)
    return PolyModP(poly.variables, prime, terms)


def is_good_prime(polys, prime):
    """True when ``prime`` divides no denominator of any coefficient."""
    for p in polys:
        for c in p.terms.values():
            if isinstance(c, Fraction) and c.denominator % prime == 0:
                return False
    return True
