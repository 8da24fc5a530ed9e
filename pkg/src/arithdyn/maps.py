"""Polynomial self-maps of A^N and rational self-maps of P^N.

A :class:`ProjRationalMap` is always kept saturated (its components have no
common factor) and in canonical coefficient form, so two maps are equal iff
their component tuples are equal.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .algebra.gcd import gcd_many
from .algebra.poly import NEG_INF, MultiPoly, canonical_tuple
from .errors import ArityError, InvalidParameterError, VariableMismatchError
from .heights import AffinePoint, ProjPoint, normalize

HOMOGENIZING_VARIABLE = "w"


class _Indeterminate:
    """Result of evaluating a rational map on its indeterminacy locus."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INDETERMINATE"

    def __bool__(self):
        return False

    def __reduce__(self):
        return (_Indeterminate, ())


INDETERMINATE = _Indeterminate()


def homogenizing_variable(variables):
    name = HOMOGENIZING_VARIABLE
    k = 0
    while name in variables:
        k += 1
        name = f"{HOMOGENIZING_VARIABLE}{k}"
    return name


@dataclass(frozen=True)
class AffinePolyMap:
    """``(x_1..x_N) -> (f_1..f_N)`` with polynomial components."""

    components: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ArityError("a map needs at least one component")
        variables = comps[0].variables
        for c in comps:
            if not isinstance(c, MultiPoly):
                raise TypeError("components must be MultiPoly")
            if c.variables != variables:
                raise VariableMismatchError("components use different variables")
        if len(variables) != len(comps):
            raise ArityError(
                f"{len(comps)} components in {len(variables)} variables")

    @classmethod
    def from_strings(cls, strings, variables, name=""):
        return cls(tuple(MultiPoly.parse(s, variables) for s in strings), name)

    @property
    def variables(self):
        return self.components[0].variables

    @property
    def dimension(self):
        return len(self.components)

    @property
    def degree(self):
        return max(c.degree for c in self.components)

    def strings(self):
        return [str(c) for c in self.components]

    def __str__(self):
        return "(" + ", ".join(self.strings()) + ")"

    @cached_property
    def _compiled(self):
        return tuple(c.compile() for c in self.components)

    def __call__(self, P):
        return evaluate_affine(self, P)

    def compose(self, other):
        """``self o other``."""
        if other.dimension != self.dimension:
            raise ArityError("dimension mismatch")
        return AffinePolyMap(
            tuple(c.compose(other.components) for c in self.components))

    @classmethod
    def identity(cls, variables):
        return cls(MultiPoly.gens(variables), "identity")

    def is_identity(self):
        return self.components == MultiPoly.gens(self.variables)


@dataclass(frozen=True)
class ProjRationalMap:
    """Saturated tuple ``[F_0 : ... : F_N]`` of forms of a common degree d >= 1."""

    components: tuple
    name: str = field(default="", compare=False)

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        _check_forms(comps)
        if not gcd_many(comps).is_constant():
            raise ValueError("components share a common factor; use saturate()")
        if tuple(canonical_tuple(comps)) != comps:
            raise ValueError("components are not in canonical form; use saturate()")

    @classmethod
    def _trusted(cls, comps, name=""):
        """Construct from components already known to be saturated and canonical."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "components", tuple(comps))
        object.__setattr__(obj, "name", name)
        return obj

    @property
    def variables(self):
        return self.components[0].variables

    @property
    def dimension(self):
        return len(self.components) - 1

    @property
    def degree(self):
        return max(c.degree for c in self.components if c)

    @property
    def term_count(self):
        return sum(len(c) for c in self.components)

    def strings(self):
        return [str(c) for c in self.components]

    def __str__(self):
        return "[" + " : ".join(self.strings()) + "]"

    @cached_property
    def _compiled(self):
        return tuple(c.compile() for c in self.components)

    def __call__(self, P):
        return evaluate_proj(self, P)

    def is_identity(self):
        return self.components == MultiPoly.gens(self.variables)

    @classmethod
    def identity(cls, variables):
        return cls(MultiPoly.gens(variables), "identity")


def _check_forms(comps):
    if len(comps) < 2:
        raise ArityError("a map of P^N needs at least two components")
    variables = comps[0].variables
    if len(variables) != len(comps):
        raise ArityError(f"{len(comps)} components in {len(variables)} variables")
    degs = set()
    for c in comps:
        if c.variables != variables:
            raise VariableMismatchError("components use different variables")
        if not c.is_homogeneous():
            raise ValueError(f"component {c} is not homogeneous")
        if c:
            degs.add(c.degree)
    if not degs:
        raise ValueError("all components are zero")
    if len(degs) > 1:
        raise ValueError(f"components have different degrees {sorted(degs)}")


def saturate(components, name=""):
    """Divide out the common factor of a tuple of forms and normalize coefficients."""
    comps = tuple(components)
    _check_forms(comps)
    g = gcd_many(comps)
    if not g.is_constant():
        comps = tuple(c.exact_div(g) for c in comps)
    comps = tuple(canonical_tuple(comps))
    return ProjRationalMap._trusted(comps, name)


def homogenize(f: AffinePolyMap, name="") -> ProjRationalMap:
    """Extension of an affine polynomial map to P^N, new variable appended last."""
    d = f.degree
    if d is NEG_INF or d < 1:
        raise InvalidParameterError("constant map cannot be extended to P^N")
    w = homogenizing_variable(f.variables)
    comps = [c.homogenize(w, d) for c in f.components]
    ext = f.variables + (w,)
    comps.append(MultiPoly.var(w, ext) ** d)
    return saturate(comps, name or f.name)


def dehomogenize(F: ProjRationalMap, name="") -> AffinePolyMap:
    """Affine restriction, defined when the last component is ``c * w^d``."""
    last = F.components[-1]
    d = F.degree
    if not last.is_monomial() or last.leading_term()[0] != (0,) * F.dimension + (d,):
        raise InvalidParameterError(
            "map does not preserve the affine chart: last component is not c*w^d")
    c = last.leading_coefficient()
    inv = 1 / Fraction(c)
    return AffinePolyMap(tuple(p.dehomogenize(-1).scale(inv)
                               for p in F.components[:-1]), name or F.name)


def compose(f: ProjRationalMap, g: ProjRationalMap) -> ProjRationalMap:
    """Saturated ``f o g``."""
    if f.dimension != g.dimension:
        raise ArityError(f"dimension mismatch: {f.dimension} vs {g.dimension}")
    return saturate([c.compose(g.components) for c in f.components])


def iterate(f: ProjRationalMap, n: int) -> ProjRationalMap:
    """n-th iterate by binary powering, saturating after every product."""
    if not isinstance(n, int) or n < 1:
        raise ValueError("iterate needs n >= 1")
    result = None
    base = f
    while n:
        if n & 1:
            result = base if result is None else compose(base, result)
        n >>= 1
        if n:
            base = compose(base, base)
    return result


def evaluate_proj(f: ProjRationalMap, P):
    """``f(P)`` as a normalized point, or ``INDETERMINATE`` when P is in I(f)."""
    if isinstance(P, AffinePoint):
        P = P.closure()
    if len(P.coords) != len(f.components):
        raise ArityError("point and map dimensions differ")
    vals = [F(*P.coords) for F in f._compiled]
    if not any(vals):
        return INDETERMINATE
    return normalize(vals)


def evaluate_affine(f: AffinePolyMap, P) -> AffinePoint:
    if isinstance(P, ProjPoint):
        P = P.affine()
    coords = P.coords if isinstance(P, AffinePoint) else tuple(P)
    if len(coords) != f.dimension:
        raise ArityError("point and map dimensions differ")
    return AffinePoint(tuple(F(*coords) for F in f._compiled))


def inverse_check(f, g) -> bool:
    """True iff ``g o f`` and ``f o g`` are both the identity."""
    if isinstance(f, AffinePolyMap) and isinstance(g, AffinePolyMap):
        if f.dimension != g.dimension:
            raise ArityError("dimension mismatch")
        if f.variables != g.variables:
            g = AffinePolyMap(tuple(c.rename(f.variables) for c in g.components))
        return f.compose(g).is_identity() and g.compose(f).is_identity()
    if isinstance(f, AffinePolyMap):
        f = homogenize(f)
    if isinstance(g, AffinePolyMap):
        g = homogenize(g)
    if f.dimension != g.dimension:
        raise ArityError("dimension mismatch")
    if f.variables != g.variables:
        g = ProjRationalMap._trusted([c.rename(f.variables) for c in g.components], g.name)
    return compose(f, g).is_identity() and compose(g, f).is_identity()


def monomial_exponent_matrix(f):
    """Exponent matrix of a monomial map, or ``None`` if ``f`` is not monomial.

    For a projective map the rows are the Laurent exponents of
    ``F_i / F_N`` in the affine chart of the last coordinate.
    """
    comps = f.components
    if not all(c.is_monomial() for c in comps):
        return None
    exps = [c.leading_term()[0] for c in comps]
    if isinstance(f, AffinePolyMap):
        return [list(e) for e in exps]
    last = exps[-1]
    n = f.dimension
    return [[e[k] - last[k] for k in range(n)] for e in exps[:-1]]
