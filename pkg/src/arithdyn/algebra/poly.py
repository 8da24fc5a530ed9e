"""Sparse multivariate polynomials with exact rational coefficients.

Terms are stored in a dict mapping exponent tuples to coefficients.  Integral
coefficients are kept as plain ``int`` and the rest as ``Fraction``; this keeps
the common integer case (map components, orbit points) off the slow
``Fraction`` path.  Monomials are ordered graded-lexicographically with the
first variable largest.
"""

from fractions import Fraction
from math import gcd, lcm
from numbers import Rational
from types import MappingProxyType

from ..errors import ArityError, VariableMismatchError


class _NegInfDegree:
    """Degree of the zero polynomial.

    Compares below every integer but refuses arithmetic, so a zero polynomial
    can never silently contribute a bogus degree to a sum or product.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NEG_INF"

    def __lt__(self, other):
        return other is not self

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return other is self

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("NEG_INF-degree")

    def __reduce__(self):
        return (_NegInfDegree, ())


NEG_INF = _NegInfDegree()


def as_rational(c):
    """Coerce ``c`` to an exact rational in reduced int-or-Fraction form."""
    if type(c) is int:
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, bool):
        return int(c)
    if isinstance(c, Rational):
        return as_rational(Fraction(c.numerator, c.denominator))
    if isinstance(c, str):
        return as_rational(Fraction(c))
    raise TypeError(f"not an exact rational: {c!r}")


def grlex_key(exponents):
    return (sum(exponents), exponents)


def _norm(c):
    if type(c) is int:
        return c
    return c.numerator if c.denominator == 1 else c


class MultiPoly:
    """Immutable sparse polynomial over Q in an ordered tuple of variables.

    Parameters
    ----------
    variables : sequence of str
        Variable names; exponent vectors are indexed in this order.
    terms : mapping, optional
        ``{exponent_tuple: coefficient}``.  Zero coefficients are dropped.
    """

    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables, terms=None):
        variables = tuple(variables)
        n = len(variables)
        clean = {}
        if terms:
            for exp, c in terms.items():
                exp = tuple(int(e) for e in exp)
                if len(exp) != n:
                    raise ArityError(
                        f"exponent {exp} has length {len(exp)}, expected {n}")
                if any(e < 0 for e in exp):
                    raise ValueError(f"negative exponent in {exp}")
                c = as_rational(c)
                if c:
                    clean[exp] = _norm(clean.get(exp, 0) + c)
                    if not clean[exp]:
                        del clean[exp]
        self.variables = variables
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables, terms):
        # trusted path: terms already clean
        obj = cls.__new__(cls)
        obj.variables = variables
        obj._terms = terms
        obj._hash = None
        return obj

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, variables):
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, c, variables):
        variables = tuple(variables)
        c = as_rational(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def one(cls, variables):
        return cls.constant(1, variables)

    @classmethod
    def var(cls, name, variables):
        variables = tuple(variables)
        try:
            i = variables.index(name)
        except ValueError:
            raise VariableMismatchError(f"{name!r} not in {variables}") from None
        exp = tuple(1 if j == i else 0 for j in range(len(variables)))
        return cls._raw(variables, {exp: 1})

    @classmethod
    def gens(cls, variables):
        variables = tuple(variables)
        return tuple(cls.var(v, variables) for v in variables)

    @classmethod
    def monomial(cls, exponents, variables, coeff=1):
        return cls(variables, {tuple(exponents): coeff})

    @classmethod
    def parse(cls, text, variables):
        from .parse import parse_poly

        return parse_poly(text, variables)

    # -- basic queries ------------------------------------------------------

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    @property
    def nvars(self):
        return len(self.variables)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and not any(
            next(iter(self._terms))))

    def is_monomial(self):
        return len(self._terms) == 1

    @property
    def degree(self):
        """Total degree; ``NEG_INF`` for the zero polynomial."""
        if not self._terms:
            return NEG_INF
        return max(sum(e) for e in self._terms)

    def degree_in(self, i):
        if not self._terms:
            return NEG_INF
        return max(e[i] for e in self._terms)

    def is_homogeneous(self):
        degs = {sum(e) for e in self._terms}
        return len(degs) <= 1

    def sorted_terms(self):
        """Terms in decreasing graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: grlex_key(t[0]),
                      reverse=True)

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self._terms, key=grlex_key)
        return exp, self._terms[exp]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def constant_term(self):
        return self._terms.get((0,) * self.nvars, 0)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if self.variables != other.variables:
            raise VariableMismatchError(
                f"variable lists differ: {self.variables} vs {other.variables}")

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        try:
            return MultiPoly.constant(other, self.variables)
        except TypeError:
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if len(other._terms) > len(self._terms):
            a, b = other._terms, self._terms
        else:
            a, b = self._terms, other._terms
        out = dict(a)
        for e, c in b.items():
            s = out.get(e)
            if s is None:
                out[e] = c
            else:
                s = _norm(s + c)
                if s:
                    out[e] = s
                else:
                    del out[e]
        return MultiPoly._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.variables,
                              {e: -c for e, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c):
        c = as_rational(c)
        if not c:
            return MultiPoly.zero(self.variables)
        if c == 1:
            return self
        return MultiPoly._raw(self.variables,
                              {e: _norm(v * c) for e, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        a, b = self._terms, other._terms
        if not a or not b:
            return MultiPoly.zero(self.variables)
        if len(a) < len(b):
            a, b = b, a
        out = {}
        get = out.get
        n = self.nvars
        if n == 1:
            for (ea,), ca in a.items():
                for (eb,), cb in b.items():
                    k = (ea + eb,)
                    out[k] = get(k, 0) + ca * cb
        elif n == 2:
            for (a0, a1), ca in a.items():
                for (b0, b1), cb in b.items():
                    k = (a0 + b0, a1 + b1)
                    out[k] = get(k, 0) + ca * cb
        elif n == 3:
            for (a0, a1, a2), ca in a.items():
                for (b0, b1, b2), cb in b.items():
                    k = (a0 + b0, a1 + b1, a2 + b2)
                    out[k] = get(k, 0) + ca * cb
        elif n == 4:
            for (a0, a1, a2, a3), ca in a.items():
                for (b0, b1, b2, b3), cb in b.items():
                    k = (a0 + b0, a1 + b1, a2 + b2, a3 + b3)
                    out[k] = get(k, 0) + ca * cb
        else:
            for ea, ca in a.items():
                for eb, cb in b.items():
                    k = tuple(x + y for x, y in zip(ea, eb))
                    out[k] = get(k, 0) + ca * cb
        clean = {}
        for e, c in out.items():
            if c:
                clean[e] = _norm(c)
        return MultiPoly._raw(self.variables, clean)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError(f"exponent must be a nonnegative int, got {k!r}")
        if len(self._terms) == 1:
            (e, c), = self._terms.items()
            return MultiPoly._raw(self.variables,
                                  {tuple(x * k for x in e): _norm(c ** k)})
        result = MultiPoly.one(self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            return NotImplemented
        c = as_rational(other)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self.scale(Fraction(1) / c)

    def exact_div(self, divisor):
        """Exact quotient ``self / divisor``; raises if the division has a remainder."""
        q, r = self.divmod(divisor)
        if r:
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divmod(self, divisor):
        """Multivariate division by a single polynomial in graded-lex order."""
        self._check(divisor)
        if not divisor:
            raise ZeroDivisionError("division by the zero polynomial")
        lexp, lc = divisor.leading_term()
        rem = dict(self._terms)
        quot = {}
        rest = {}
        while rem:
            exp = max(rem, key=grlex_key)
            c = rem[exp]
            if all(x >= y for x, y in zip(exp, lexp)):
                qe = tuple(x - y for x, y in zip(exp, lexp))
                qc = _norm(Fraction(c) / lc)
                quot[qe] = qc
                for de, dc in divisor._terms.items():
                    k = tuple(x + y for x, y in zip(qe, de))
                    v = _norm(rem.get(k, 0) - qc * dc)
                    if v:
                        rem[k] = v
                    else:
                        rem.pop(k, None)
            else:
                rest[exp] = c
                del rem[exp]
        return (MultiPoly._raw(self.variables, quot),
                MultiPoly._raw(self.variables, rest))

    # -- comparison & hashing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self._terms == other._terms
        try:
            c = as_rational(other)
        except TypeError:
            return NotImplemented
        return self.is_constant() and self.constant_term() == c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    # -- evaluation & substitution -----------------------------------------

    def __call__(self, *values):
        if len(values) == 1 and isinstance(values[0], (list, tuple)):
            values = values[0]
        return self.evaluate(values)

    def evaluate(self, values):
        """Exact value at a point; ``values`` may be ints, Fractions or mod-p ints."""
        if len(values) != self.nvars:
            raise ArityError(f"expected {self.nvars} values, got {len(values)}")
        cache = [{0: 1} for _ in values]
        total = 0
        for exp, c in self._terms.items():
            t = c
            for i, e in enumerate(exp):
                if e:
                    pw = cache[i].get(e)
                    if pw is None:
                        pw = values[i] ** e
                        cache[i][e] = pw
                    t = t * pw
            total = total + t
        return _norm(total) if isinstance(total, (int, Fraction)) else total

    def compile(self):
        """Fast exact evaluator ``f(*values)`` built from generated source."""
        names = [f"a{i}" for i in range(self.nvars)]
        consts = {}
        terms = []
        for k, (exp, c) in enumerate(self._terms.items()):
            if type(c) is int:
                factors = [repr(c)]
            else:
                consts[f"c{k}"] = c
                factors = [f"c{k}"]
            factors += [n if e == 1 else f"{n}**{e}"
                        for n, e in zip(names, exp) if e]
            terms.append("*".join(factors))
        if not terms:
            body = "0"
        elif len(terms) <= 200:
            body = " + ".join(terms)
        else:
            # a flat tuple keeps the compiler from recursing once per term
            body = "sum((" + ", ".join(terms) + ",))"
        return eval(f"lambda {', '.join(names)}: {body}", consts)  # noqa: S307

    def compose(self, subs):
        """Substitute ``subs[i]`` for the i-th variable.

        All substitutions must share one variable list, which becomes the
        variable list of the result.
        """
        subs = list(subs)
        if len(subs) != self.nvars:
            raise ArityError(
                f"{self.nvars} variables but {len(subs)} substitutions")
        if not subs:
            raise ArityError("cannot substitute into a polynomial in no variables")
        target = subs[0].variables
        for s in subs:
            if s.variables != target:
                raise VariableMismatchError("substitutions use different variables")
        powers = [{0: MultiPoly.one(target), 1: s} for s in subs]

        def power(i, e):
            cache = powers[i]
            p = cache.get(e)
            if p is None:
                half = power(i, e // 2)
                p = half * half
                if e & 1:
                    p = p * subs[i]
                cache[e] = p
            return p

        acc = {}
        for exp, c in self._terms.items():
            t = None
            for i, e in enumerate(exp):
                if e:
                    p = power(i, e)
                    t = p if t is None else t * p
            if t is None:
                t = MultiPoly.one(target)
            for te, tc in t._terms.items():
                acc[te] = acc.get(te, 0) + c * tc
        return MultiPoly._raw(target, {e: _norm(v) for e, v in acc.items() if v})

    def derivative(self, i):
        out = {}
        for exp, c in self._terms.items():
            e = exp[i]
            if e:
                k = exp[:i] + (e - 1,) + exp[i + 1:]
                out[k] = _norm(c * e)
        return MultiPoly._raw(self.variables, out)

    # -- variable management ------------------------------------------------

    def homogenize(self, name, degree=None):
        """Homogenize with a new variable ``name`` appended last."""
        if name in self.variables:
            raise VariableMismatchError(f"{name!r} already a variable")
        d = self.degree if degree is None else degree
        if d is NEG_INF:
            return MultiPoly.zero(self.variables + (name,))
        out = {}
        for exp, c in self._terms.items():
            s = sum(exp)
            if s > d:
                raise ValueError(f"term of degree {s} exceeds target degree {d}")
            out[exp + (d - s,)] = c
        return MultiPoly._raw(self.variables + (name,), out)

    def dehomogenize(self, i=-1):
        """Set variable ``i`` to 1 and drop it."""
        n = self.nvars
        i %= n
        out = {}
        for exp, c in self._terms.items():
            k = exp[:i] + exp[i + 1:]
            v = _norm(out.get(k, 0) + c)
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return MultiPoly._raw(self.variables[:i] + self.variables[i + 1:], out)

    def rename(self, variables):
        variables = tuple(variables)
        if len(variables) != self.nvars:
            raise ArityError("rename must keep the number of variables")
        return MultiPoly._raw(variables, dict(self._terms))

    def embed(self, variables):
        """Re-express over a variable list containing all of ours."""
        variables = tuple(variables)
        try:
            idx = [variables.index(v) for v in self.variables]
        except ValueError:
            raise VariableMismatchError(
                f"{self.variables} not contained in {variables}") from None
        out = {}
        for exp, c in self._terms.items():
            k = [0] * len(variables)
            for j, e in zip(idx, exp):
                k[j] = e
            out[tuple(k)] = c
        return MultiPoly._raw(variables, out)

    # -- normalization ------------------------------------------------------

    def content(self):
        """Positive rational c with ``self / c`` integral and primitive."""
        return tuple_content([self])

    def canonical(self):
        """Primitive integer form with positive leading coefficient (graded-lex)."""
        if not self._terms:
            return self
        return canonical_tuple([self])[0]

    def is_canonical(self):
        return self == self.canonical()

    def mod_p(self, prime):
        from .modp import poly_mod_p

        return poly_mod_p(self, prime)

    # -- printing -----------------------------------------------------------

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MultiPoly({format_poly(self)!r}, {self.variables!r})"


def tuple_content(polys):
    """Positive rational c such that every ``p / c`` has coprime integer coefficients."""
    num = 0
    den = 1
    for p in polys:
        for c in p._terms.values():
            if type(c) is int:
                num = gcd(num, c)
            else:
                num = gcd(num, c.numerator)
                den = lcm(den, c.denominator)
    if num == 0:
        return 1
    return _norm(Fraction(num, den))


def canonical_tuple(polys):
    """Divide a tuple of polynomials by their joint content and fix the sign.

    The sign is chosen so that the graded-lex leading coefficient of the
    first nonzero member is positive.
    """
    polys = list(polys)
    c = tuple_content(polys)
    lead = next((p for p in polys if p), None)
    if lead is None:
        return polys
    if lead.leading_coefficient() < 0:
        c = -c
    if c == 1:
        return polys
    inv = Fraction(1) / c if type(c) is int else 1 / Fraction(c)
    return [p.scale(inv) for p in polys]


def _fmt_coeff(c):
    return str(c) if type(c) is int else f"{c.numerator}/{c.denominator}"


def format_poly(p):
    """Render in the text grammar accepted by :func:`parse_poly`."""
    if not p._terms:
        return "0"
    parts = []
    for exp, c in p.sorted_terms():
        mono = "*".join(
            v if e == 1 else f"{v}^{e}"
            for v, e in zip(p.variables, exp) if e)
        sign = "-" if c < 0 else "+"
        a = -c if c < 0 else c
        if not mono:
            body = _fmt_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(a)}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
