"""JSON serialization for both formula AST families."""

from __future__ import annotations

from fractions import Fraction

from ordarena import ordinal
from ordarena.logic import ast
from ordarena.logic import continuous as cont
from ordarena.pigame import GaussianRational


# -- discrete formulas ---------------------------------------------------------


def term_to_json(t: ast.Term) -> dict:
    return {"vars": [[v, m] for v, m in t.vars], "units": t.units}


def term_from_json(data: dict) -> ast.Term:
    return ast.Term(tuple((int(v), int(m)) for v, m in data["vars"]), int(data["units"]))


def formula_to_json(phi: ast.Formula) -> dict:
    if isinstance(phi, ast.Eq):
        return {"op": "eq", "left": term_to_json(phi.left), "right": term_to_json(phi.right)}
    if isinstance(phi, ast.Le):
        return {"op": "le", "left": term_to_json(phi.left), "right": term_to_json(phi.right)}
    if isinstance(phi, ast.Not):
        return {"op": "not", "body": formula_to_json(phi.body)}
    if isinstance(phi, (ast.And, ast.Or)):
        return {"op": "and" if isinstance(phi, ast.And) else "or",
                "children": [formula_to_json(c) for c in phi.children]}
    if isinstance(phi, (ast.CountableAnd, ast.CountableOr)):
        return {"op": "cand" if isinstance(phi, ast.CountableAnd) else "cor",
                "rank": ordinal.format_ord(phi.rank),
                "prototypes": [formula_to_json(c) for c in phi.prototypes]}
    if isinstance(phi, (ast.Exists, ast.Forall)):
        return {"op": "exists" if isinstance(phi, ast.Exists) else "forall",
                "var": phi.var, "body": formula_to_json(phi.body)}
    raise TypeError(f"not a formula: {phi!r}")


def formula_from_json(data: dict) -> ast.Formula:
    op = data["op"]
    if op in ("eq", "le"):
        cls = ast.Eq if op == "eq" else ast.Le
        return cls(term_from_json(data["left"]), term_from_json(data["right"]))
    if op == "not":
        return ast.Not(formula_from_json(data["body"]))
    if op in ("and", "or"):
        cls = ast.And if op == "and" else ast.Or
        return cls(tuple(formula_from_json(c) for c in data["children"]))
    if op in ("cand", "cor"):
        cls = ast.CountableAnd if op == "cand" else ast.CountableOr
        return cls(tuple(formula_from_json(c) for c in data["prototypes"]),
                   ordinal.parse(data["rank"]))
    if op in ("exists", "forall"):
        cls = ast.Exists if op == "exists" else ast.Forall
        return cls(int(data["var"]), formula_from_json(data["body"]))
    raise ValueError(f"unknown op {op!r}")


# -- continuous formulas ----------------------------------------------------------


def _poly_to_json(p: cont.StarPolynomial) -> list:
    return [
        {"coeff": [str(m.coeff.re), str(m.coeff.im)],
         "factors": [[name, starred] for name, starred in m.factors]}
        for m in p.monomials
    ]


def _poly_from_json(data: list) -> cont.StarPolynomial:
    monos = []
    for m in data:
        coeff = GaussianRational(Fraction(m["coeff"][0]), Fraction(m["coeff"][1]))
        factors = tuple((str(n), bool(s)) for n, s in m["factors"])
        monos.append(cont.Monomial(coeff, factors))
    return cont.StarPolynomial(tuple(monos))


def continuous_to_json(phi: cont.ContinuousFormula) -> dict:
    if isinstance(phi, cont.NormAtom):
        return {"op": "norm", "poly": _poly_to_json(phi.poly), "lipschitz": str(phi.lipschitz)}
    if isinstance(phi, cont.Const):
        return {"op": "const", "value": str(phi.value)}
    if isinstance(phi, (cont.MaxOf, cont.MinOf)):
        return {"op": "max" if isinstance(phi, cont.MaxOf) else "min",
                "operands": [continuous_to_json(c) for c in phi.operands]}
    if isinstance(phi, cont.DotMinus):
        return {"op": "dotminus", "left": continuous_to_json(phi.left),
                "right": continuous_to_json(phi.right)}
    if isinstance(phi, (cont.InfBlock, cont.SupBlock)):
        return {"op": "inf" if isinstance(phi, cont.InfBlock) else "sup",
                "variables": list(phi.variables), "domain": phi.domain,
                "body": continuous_to_json(phi.body)}
    if isinstance(phi, cont.PhiRef):
        return {"op": "phi-ref", "n": phi.n, "delta": str(phi.delta),
                "args": [_poly_to_json(a) for a in phi.args]}
    if isinstance(phi, (cont.CountableMax, cont.CountableMin)):
        return {"op": "cmax" if isinstance(phi, cont.CountableMax) else "cmin",
                "modulus": str(phi.modulus),
                "range": [str(phi.range_interval[0]), str(phi.range_interval[1])],
                "prototypes": [continuous_to_json(c) for c in phi.prototypes]}
    raise TypeError(f"not a continuous formula: {phi!r}")


def continuous_from_json(data: dict) -> cont.ContinuousFormula:
    op = data["op"]
    if op == "norm":
        return cont.NormAtom(_poly_from_json(data["poly"]), Fraction(data["lipschitz"]))
    if op == "const":
        return cont.Const(Fraction(data["value"]))
    if op in ("max", "min"):
        cls = cont.MaxOf if op == "max" else cont.MinOf
        return cls(tuple(continuous_from_json(c) for c in data["operands"]))
    if op == "dotminus":
        return cont.DotMinus(continuous_from_json(data["left"]),
                             continuous_from_json(data["right"]))
    if op in ("inf", "sup"):
        cls = cont.InfBlock if op == "inf" else cont.SupBlock
        return cls(tuple(data["variables"]), int(data["domain"]),
                   continuous_from_json(data["body"]))
    if op == "phi-ref":
        return cont.PhiRef(int(data["n"]), Fraction(data["delta"]),
                           tuple(_poly_from_json(a) for a in data["args"]))
    if op in ("cmax", "cmin"):
        cls = cont.CountableMax if op == "cmax" else cont.CountableMin
        return cls(tuple(continuous_from_json(c) for c in data["prototypes"]),
                   Fraction(data["modulus"]),
                   (Fraction(data["range"][0]), Fraction(data["range"][1])))
    raise ValueError(f"unknown op {op!r}")
