"""Regenerate the expanded ``terms`` of ``src/isodyn/data/golden.json`` from its ``expr`` strings.

Each formula stores the expression as transcribed (``^`` for powers, implicit
multiplication) and the expanded monomial list used at runtime.  Run after
editing an ``expr``:

    python3 tools/build_golden.py
"""
import json
import pathlib

from sympy import Poly, symbols
from sympy.parsing.sympy_parser import (convert_xor, implicit_multiplication_application, parse_expr,
                                        standard_transformations)

PATH = pathlib.Path(__file__).resolve().parents[1] / "src" / "isodyn" / "data" / "golden.json"
TRANSFORMS = standard_transformations + (implicit_multiplication_application, convert_xor)


def parse(expr, names):
    syms = symbols(names)
    return parse_expr(expr, local_dict=dict(zip(names, syms)), transformations=TRANSFORMS), syms


def expand_terms(expr, names):
    e, syms = parse(expr, names)
    poly = Poly(e, *syms)
    return [[str(c), list(m)] for m, c in sorted(poly.terms())]


def main():
    data = json.loads(PATH.read_text())
    for entry in data["formulas"].values():
        entry["terms"] = expand_terms(entry["expr"], entry["vars"])
    PATH.write_text(json.dumps(data, indent=1) + "\n")


if __name__ == "__main__":
    main()
