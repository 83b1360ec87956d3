"""Tiny boolean expression language over named predicates.

Grammar (loosest binding first):

    or_expr   := xor_expr (('||' | '|' | 'or')  xor_expr)*
    xor_expr  := and_expr (('^' | 'xor') and_expr)*
    and_expr  := not_expr (('&&' | '&' | 'and') not_expr)*
    not_expr  := ('!' | '~' | 'not') not_expr | '(' or_expr ')' | NAME

Names are case-sensitive predicate identifiers such as P, S, PPT, MUB.
"""

import re

from .errors import UnknownPredicateError

_TOKEN = re.compile(r"\s*(\(|\)|\|\||&&|\||&|\^|!|~|[A-Za-z_][A-Za-z0-9_]*)")
_WORD_OPS = {"and": "&&", "or": "||", "xor": "^", "not": "!"}


class BooleanExpr:
    """Parsed boolean combination of predicate names."""

    def __init__(self, source: str):
        self.source = source
        self._tokens = self._tokenize(source)
        self._pos = 0
        self._ast = self._parse_or()
        if self._pos != len(self._tokens):
            raise ValueError(f"trailing input in boolean expression: {source!r}")
        self.names = frozenset(self._collect_names(self._ast))

    @staticmethod
    def _tokenize(source):
        tokens = []
        pos = 0
        while pos < len(source):
            m = _TOKEN.match(source, pos)
            if not m:
                if source[pos:].strip():
                    raise ValueError(f"bad character in boolean expression at {source[pos:]!r}")
                break
            tok = m.group(1)
            tokens.append(_WORD_OPS.get(tok, tok))
            pos = m.end()
        return tokens

    def _peek(self):
        return self._tokens[self._pos] if self._pos < len(self._tokens) else None

    def _take(self):
        tok = self._peek()
        self._pos += 1
        return tok

    def _parse_or(self):
        node = self._parse_xor()
        while self._peek() in ("||", "|"):
            self._take()
            node = ("or", node, self._parse_xor())
        return node

    def _parse_xor(self):
        node = self._parse_and()
        while self._peek() == "^":
            self._take()
            node = ("xor", node, self._parse_and())
        return node

    def _parse_and(self):
        node = self._parse_not()
        while self._peek() in ("&&", "&"):
            self._take()
            node = ("and", node, self._parse_not())
        return node

    def _parse_not(self):
        tok = self._peek()
        if tok in ("!", "~"):
            self._take()
            return ("not", self._parse_not())
        if tok == "(":
            self._take()
            node = self._parse_or()
            if self._take() != ")":
                raise ValueError(f"unbalanced parentheses in {self.source!r}")
            return node
        if tok is None or tok in (")", "||", "|", "&&", "&", "^"):
            raise ValueError(f"expected a predicate name in {self.source!r}")
        self._take()
        return ("name", tok)

    @classmethod
    def _collect_names(cls, node):
        if node[0] == "name":
            yield node[1]
        elif node[0] == "not":
            yield from cls._collect_names(node[1])
        else:
            yield from cls._collect_names(node[1])
            yield from cls._collect_names(node[2])

    def evaluate(self, env) -> bool:
        """Evaluate against a mapping of predicate name -> bool."""
        missing = self.names - set(env)
        if missing:
            raise UnknownPredicateError(f"unknown predicates {sorted(missing)} in {self.source!r}")
        return self._eval(self._ast, env)

    @classmethod
    def _eval(cls, node, env):
        op = node[0]
        if op == "name":
            return bool(env[node[1]])
        if op == "not":
            return not cls._eval(node[1], env)
        a = cls._eval(node[1], env)
        b = cls._eval(node[2], env)
        if op == "and":
            return a and b
        if op == "or":
            return a or b
        return a != b

    def __repr__(self):
        return f"BooleanExpr({self.source!r})"
