"""Surface syntax for linear combinations: parsing and canonical printing.

Grammar (whitespace is insignificant)::

    expr    := ['+'|'-'] tensor (('+'|'-') tensor)*
    tensor  := product (('(x)' | '⊗' | 'ox') product)*
    product := atom ('*' atom)*
    atom    := rational | basis-element | '(' expr ')'

A bare rational ``c`` stands for ``c`` times the unit. ``(x)`` (or ``⊗``) is
always the tensor sign, never a parenthesised letter x. ``ox`` is the tensor
sign when it stands alone after a complete factor, as in ``a ox b``; a letter
cannot follow a factor without ``*``, so this never swallows a word.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from ..bases import LabelledDiagram, Monomial, diag_canonical, parse_matrix, trace_normal_form
from ..errors import MalformedMatrix, ParseError, UnknownLetter
from ..hopf import BialgebraOps
from ..linalg import LinComb, lc_combine, lc_tensor

TENSOR = " (x) "

_RATIONAL = re.compile(r"\d+(?:/\d+)?")


class _Parser:
    def __init__(self, text: str, alg: BialgebraOps):
        self.text = text
        self.alg = alg
        self.kind = alg.params.get("kind", "word")
        self.pos = 0
        alphabet = alg.params.get("alphabet")
        self.letters = set(alphabet) if alphabet is not None else None
        if self.kind == "group":
            G = alg.params["group"]
            # longest names first so "c^2" wins over "c"
            self.group_names = sorted((n for n in G.names if n != "1"), key=len, reverse=True)

    # -- lexing helpers
    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.skip()
        return self.text.startswith(s, self.pos)

    def take(self, s: str) -> bool:
        if self.peek(s):
            self.pos += len(s)
            return True
        return False

    def at_tensor(self) -> bool:
        self.skip()
        rest = re.sub(r"\s+", "", self.text[self.pos:self.pos + 8])
        return rest.startswith("(x)") or rest.startswith("⊗")

    def at_infix_ox(self) -> bool:
        self.skip()
        i = self.pos
        return (i > 0 and self.text[i - 1].isspace() and self.text.startswith("ox", i)
                and (i + 2 == len(self.text) or not self.text[i + 2].isalpha()))

    def take_tensor(self) -> bool:
        if self.at_infix_ox():
            self.pos += 2
            return True
        if not self.at_tensor():
            return False
        if self.text.startswith("⊗", self.pos):
            self.pos += 1
            return True
        for _ in range(3):  # '(', 'x', ')' possibly separated by spaces
            self.skip()
            self.pos += 1
        return True

    def error(self, msg: str):
        raise ParseError(msg, self.pos)

    # -- grammar
    def parse(self):
        value = self.expr()
        self.skip()
        if self.pos != len(self.text):
            self.error(f"unexpected {self.text[self.pos]!r}")
        return value

    def expr(self):
        sign = 1
        if self.take("-"):
            sign = -1
        else:
            self.take("+")
        value = _scale(self.tensor(), sign)
        while True:
            if self.take("+"):
                value = _add(value, self.tensor(), 1, self.alg)
            elif self.peek("-"):
                self.pos += 1
                value = _add(value, self.tensor(), -1, self.alg)
            else:
                return value

    def tensor(self):
        parts = [self.product()]
        while self.take_tensor():
            parts.append(self.product())
        if len(parts) == 1:
            return parts[0]
        out = _as_lc(parts[0], self.alg, 1)
        for p in parts[1:]:
            out = lc_tensor(out, _as_lc(p, self.alg, 1))
        return out

    def product(self):
        value = self.atom()
        while self.take("*"):
            value = _mul(value, self.atom(), self.alg)
        return value

    def atom(self):
        self.skip()
        if self.pos >= len(self.text):
            self.error("unexpected end of input")
        if self.at_tensor():
            self.error("tensor sign without left operand")
        if self.take("("):
            value = self.expr()
            if not self.take(")"):
                self.error("missing ')'")
            return value
        if self.kind == "group":
            for name in self.group_names:
                if self.text.startswith(name, self.pos):
                    self.pos += len(name)
                    return LinComb._raw({self.alg.params["group"].element(name): 1})
        m = _RATIONAL.match(self.text, self.pos)
        if m:
            self.pos = m.end()
            value = Fraction(m.group())
            return value
        if self.text.startswith("[", self.pos):
            return self.matrix()
        ch = self.text[self.pos]
        if ch.isalpha():
            return self.letters_atom()
        self.error(f"unexpected {ch!r}")

    def letters_atom(self):
        start = self.pos
        kind = self.kind
        if kind in ("group", "ldiag", "diag"):
            raise UnknownLetter(f"unexpected letter {self.text[start]!r}", start)
        if kind == "monomial":
            exps = {}
            while self.pos < len(self.text) and self.text[self.pos].isalpha():
                x = self._letter()
                e = 1
                m = re.compile(r"\^(\d+)").match(self.text, self.pos)
                if m:
                    e = int(m.group(1))
                    self.pos = m.end()
                    if e == 0:
                        self.error("exponent must be positive")
                exps[x] = exps.get(x, 0) + e
            return LinComb._raw({Monomial.of(exps): 1})
        word = []
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            word.append(self._letter())
        w = "".join(word)
        if kind == "trace":
            return LinComb._raw({trace_normal_form(w, self.alg.params["theta"]): 1})
        return LinComb._raw({w: 1})

    def _letter(self) -> str:
        x = self.text[self.pos]
        if self.letters is not None and x not in self.letters:
            raise UnknownLetter(f"letter {x!r} is not in the alphabet", self.pos)
        self.pos += 1
        return x

    def matrix(self):
        start = self.pos
        depth = 0
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            self.pos += 1
            if ch == "[":
                depth += 1
            elif ch == "]":
                depth -= 1
                if depth == 0:
                    break
        if depth:
            raise MalformedMatrix("unbalanced brackets in matrix literal", start)
        try:
            rows = parse_matrix(self.text[start:self.pos])
            d = LabelledDiagram(rows)
        except MalformedMatrix as exc:
            raise MalformedMatrix(exc.args[0], start) from None
        if self.kind == "diag":
            return LinComb._raw({diag_canonical(d): 1})
        if self.kind != "ldiag":
            self.error("matrix literal outside a diagram algebra")
        return LinComb._raw({d: 1})


def _as_lc(v, alg: BialgebraOps, arity: int) -> LinComb:
    if isinstance(v, LinComb):
        return v
    unit = alg.unit if arity == 1 else (alg.unit,) * arity
    return LinComb({unit: v})


def _arity(X: LinComb) -> int:
    for b in X.raw_items():
        return len(b[0]) if isinstance(b[0], tuple) else 1
    return 1


def _scale(v, c):
    return v * c if isinstance(v, Fraction) else v.scale(c)


def _add(x, y, sign, alg):
    if isinstance(x, Fraction) and isinstance(y, Fraction):
        return x + sign * y
    arity = _arity(x if isinstance(x, LinComb) else y)
    X, Y = _as_lc(x, alg, arity), _as_lc(y, alg, arity)
    if X and Y and _arity(X) != _arity(Y):
        raise ParseError("cannot add tensors of different arity")
    return lc_combine(1, X, sign, Y)


def _mul(x, y, alg):
    if isinstance(x, Fraction):
        return x * y if isinstance(y, Fraction) else y.scale(x)
    if isinstance(y, Fraction):
        return x.scale(y)
    ax, ay = _arity(x), _arity(y)
    if ax != ay:
        raise ParseError("cannot multiply tensors of different arity")
    if ax == 1:
        return alg.product(x, y)
    return alg.tensor_product(x, y)


def parse_expr(text: str, alg: BialgebraOps) -> LinComb:
    """Parse ``text`` into a linear combination over the basis of ``alg``."""
    value = _Parser(text, alg).parse()
    return _as_lc(value, alg, 1) if isinstance(value, Fraction) else value


# ------------------------------------------------------------------ printing

def format_basis(b) -> str:
    if isinstance(b, tuple):
        return TENSOR.join(format_basis(x) for x in b)
    if isinstance(b, str):
        return b or "1"
    return str(b)


def _is_unit(b) -> bool:
    return format_basis(b) == "1"


def format_lc(X: LinComb) -> str:
    """Canonical text: basis order, reduced fractions, ``1*`` omitted."""
    if not X:
        return "0"
    out = []
    for b, c in X.terms():
        a = abs(c)
        if _is_unit(b):
            body = str(a)
        elif a == 1:
            body = format_basis(b)
        else:
            body = f"{a}*{format_basis(b)}"
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def lc_to_json(X: LinComb) -> list[dict]:
    out = []
    for b, c in X.terms():
        basis = [format_basis(x) for x in b] if isinstance(b, tuple) else format_basis(b)
        out.append({"basis": basis, "coefficient": str(c)})
    return out


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=False)
