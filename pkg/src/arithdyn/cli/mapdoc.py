"""YAML map documents.

A document names either a zoo family::

    zoo: {name: henon, params: {a: 1, b: -1}}

or explicit polynomial components::

    name: henon
    dimension: 2
    variables: [x, y]
    components: ["y", "y^2 + x"]
    inverse_components: ["y - x^2", "x"]

Setting ``projective: true`` reads the components as forms in N+1 variables.
"""

from dataclasses import dataclass, field
from typing import Optional

import yaml

from ..algebra.poly import MultiPoly
from ..errors import InvalidParameterError, ParseError
from ..maps import AffinePolyMap, homogenize, inverse_check, saturate
from ..zoo import ZooMap, zoo_get

_KEYS = {"name", "dimension", "variables", "components", "inverse_components",
         "projective", "zoo"}


@dataclass
class MapDocument:
    name: str = ""
    dimension: Optional[int] = None
    variables: list = field(default_factory=list)
    components: list = field(default_factory=list)
    inverse_components: Optional[list] = None
    projective: bool = False
    zoo: Optional[dict] = None

    def to_yaml(self):
        return yaml.safe_dump(self.as_dict(), sort_keys=False, default_flow_style=None)

    def as_dict(self):
        if self.zoo is not None:
            return {"zoo": self.zoo}
        out = {"name": self.name, "dimension": self.dimension,
               "variables": list(self.variables), "components": list(self.components)}
        if self.projective:
            out["projective"] = True
        if self.inverse_components is not None:
            out["inverse_components"] = list(self.inverse_components)
        return out


def _mark(node):
    m = node.start_mark
    return m.line + 1, m.column + 1


def _scalar_list(node, key):
    if not isinstance(node, yaml.SequenceNode):
        raise ParseError(f"{key!r} must be a list", *_mark(node))
    out = []
    for item in node.value:
        if not isinstance(item, yaml.ScalarNode):
            raise ParseError(f"{key!r} entries must be strings", *_mark(item))
        out.append((str(item.value), item))
    return out


def _parse_component(text, node, variables, key):
    try:
        return MultiPoly.parse(text, variables)
    except ParseError as exc:
        line, col = _mark(node)
        # quoted scalars start one column before the text
        offset = 1 if node.style in ("'", '"') else 0
        inner = (exc.column or 1) - 1
        raise ParseError(f"{key}: {str(exc).split(' (')[0]}", line,
                         col + offset + inner) from None


def parse_map_document(text, source="<document>"):
    """Parse YAML text to ``(MapDocument, ZooMap)``; errors carry line/column."""
    try:
        root = yaml.compose(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line, col = (mark.line + 1, mark.column + 1) if mark else (None, None)
        raise ParseError(f"{source}: invalid YAML: {getattr(exc, 'problem', exc)}",
                         line, col) from None
    if not isinstance(root, yaml.MappingNode):
        raise ParseError(f"{source}: a map document must be a mapping", 1, 1)
    nodes = {}
    for knode, vnode in root.value:
        if knode.value not in _KEYS:
            raise ParseError(f"unknown key {knode.value!r}", *_mark(knode))
        nodes[knode.value] = vnode
    if "zoo" in nodes:
        if "components" in nodes or "inverse_components" in nodes:
            raise ParseError("'zoo' and explicit components are mutually exclusive",
                             *_mark(nodes["zoo"]))
        ref = yaml.safe_load(yaml.serialize(nodes["zoo"]))
        if not isinstance(ref, dict) or "name" not in ref:
            raise ParseError("'zoo' needs a name", *_mark(nodes["zoo"]))
        params = ref.get("params") or {}
        doc = MapDocument(zoo={"name": ref["name"], "params": params})
        return doc, zoo_get(ref["name"], **params)
    if "components" not in nodes:
        raise ParseError(f"{source}: 'components' (or 'zoo') is required", 1, 1)
    plain = {k: yaml.safe_load(yaml.serialize(v)) for k, v in nodes.items()
             if k not in ("components", "inverse_components")}
    comps = _scalar_list(nodes["components"], "components")
    projective = bool(plain.get("projective", False))
    variables = plain.get("variables")
    if variables is None:
        n = len(comps) - (1 if projective else 0)
        variables = ["x", "y", "z"][:n] if n <= 3 else [f"x{i + 1}" for i in range(n)]
        if projective:
            variables = variables + ["w"]
    variables = [str(v) for v in variables]
    dim = plain.get("dimension")
    expected = len(variables) - (1 if projective else 0)
    if dim is not None and dim != expected:
        raise ParseError(f"dimension {dim} does not match {len(variables)} variables",
                         *_mark(nodes["dimension"]))
    if len(comps) != len(variables):
        raise ParseError(f"{len(comps)} components for {len(variables)} variables",
                         *_mark(nodes["components"]))
    polys = [_parse_component(t, nd, variables, "components") for t, nd in comps]
    inv_polys = None
    inv_strings = None
    if "inverse_components" in nodes:
        inv = _scalar_list(nodes["inverse_components"], "inverse_components")
        if len(inv) != len(variables):
            raise ParseError("inverse_components has the wrong length",
                             *_mark(nodes["inverse_components"]))
        inv_polys = [_parse_component(t, nd, variables, "inverse_components")
                     for t, nd in inv]
        inv_strings = [t for t, _ in inv]
    name = str(plain.get("name", "") or "map")
    doc = MapDocument(name, expected, variables, [t for t, _ in comps], inv_strings,
                      projective)
    return doc, build_map(doc.name, polys, inv_polys, projective)


def build_map(name, polys, inv_polys=None, projective=False) -> ZooMap:
    if projective:
        F = saturate(polys, name)
        G = saturate(inv_polys, name + "^-1") if inv_polys else None
        if G is not None and not inverse_check(F, G):
            raise InvalidParameterError("inverse_components fail the inverse check")
        return ZooMap(name, {}, F, None, None, G)
    f = AffinePolyMap(tuple(polys), name)
    g = AffinePolyMap(tuple(inv_polys), name + "^-1") if inv_polys else None
    if g is not None and not inverse_check(f, g):
        raise InvalidParameterError("inverse_components fail the inverse check")
    return ZooMap(name, {}, homogenize(f, name), f, g,
                  homogenize(g, name + "^-1") if g is not None else None)


def load_map_document(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InvalidParameterError(f"cannot read map document {path}: {exc}") from None
    return parse_map_document(text, str(path))


def to_document(zm: ZooMap) -> MapDocument:
    """Explicit-component document for a map (affine form when available)."""
    if zm.forward is not None:
        f, g, proj = zm.forward, zm.inverse, False
    else:
        f, g, proj = zm.projective, zm.projective_inverse, True
    return MapDocument(zm.name, f.dimension,
                       list(f.variables), f.strings(),
                       g.strings() if g is not None else None, proj)
