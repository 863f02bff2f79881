"""Expression grammar for elements, symbols, forms, and algebra spec files.

Grammar (whitespace-insensitive):

    expr   := ['-'|'+'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' ['-'] INT)?
    atom   := rational | IDENT | 'exp(' expr ')' | 'log(' expr ')' | '(' expr ')'
    rational := INT ('/' INT)?

Symbol sums add '{ expr, expr, ... }' tuples with integer multiplicities;
forms add differentials 'd<name>' joined by '∧'. Identifiers t (or t1..tm)
are the nilpotent variables; every other identifier must be a declared
parameter of the target algebra. Negative exponents are only valid on
invertible factors. Errors carry the 1-based line:column of the offending
token.
"""

from fractions import Fraction

from .algebra import Algebra, AlgElem
from .forms import Form, wedge_insert
from .ksymbols import SymbolSum


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return f"Token({self.kind},{self.text!r},{self.line}:{self.col})"


_OPS = set("+-*^(){},/∧")


def tokenize(text):
    toks = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(Token("NUM", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(Token("IDENT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _OPS:
            toks.append(Token(ch, ch, line, col))
            col += 1
            i += 1
            continue
        raise ValueError(f"syntax error at {line}:{col}")
    toks.append(Token("EOF", "", line, col))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = tokenize(text)
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def fail(self, tok=None):
        tok = tok or self.peek()
        raise ValueError(f"syntax error at {tok.line}:{tok.col}")

    def expect(self, kind):
        tok = self.next()
        if tok.kind != kind:
            self.fail(tok)
        return tok

    def at_end(self):
        return self.peek().kind == "EOF"

    # -- expressions -----------------------------------------------------------

    def expr(self):
        if self.peek().kind in ("+", "-"):
            sign = self.next().kind
            node = self.term()
            if sign == "-":
                node = ("neg", node)
        else:
            node = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.next().kind
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.factor()
        while self.peek().kind in ("*", "/"):
            op = self.next().kind
            rhs = self.factor()
            node = ("mul", node, rhs) if op == "*" else ("div", node, rhs)
        return node

    def factor(self):
        node = self.atom()
        if self.peek().kind == "^":
            self.next()
            neg = False
            if self.peek().kind == "-":
                self.next()
                neg = True
            tok = self.expect("NUM")
            e = int(tok.text)
            node = ("pow", node, -e if neg else e)
        return node

    def atom(self):
        tok = self.next()
        if tok.kind == "NUM":
            num = int(tok.text)
            # fold NUM/NUM into one literal so form coefficients stay atomic
            if self.peek().kind == "/" and self.toks[self.pos + 1].kind == "NUM":
                self.next()
                den = self.next()
                return ("num", Fraction(num, int(den.text)))
            return ("num", Fraction(num))
        if tok.kind == "IDENT":
            if tok.text in ("exp", "log") and self.peek().kind == "(":
                self.next()
                arg = self.expr()
                self.expect(")")
                return ("call", tok.text, arg)
            return ("var", tok.text)
        if tok.kind == "(":
            node = self.expr()
            self.expect(")")
            return node
        self.fail(tok)

    # -- symbol sums -----------------------------------------------------------

    def symbol_tuple(self):
        self.expect("{")
        entries = [self.expr()]
        while self.peek().kind == ",":
            self.next()
            entries.append(self.expr())
        self.expect("}")
        return entries

    def symbol_term(self):
        coeff = 1
        if self.peek().kind == "NUM":
            coeff = int(self.next().text)
            self.expect("*")
        return coeff, self.symbol_tuple()

    def symbol_sum(self):
        out = []
        sign = 1
        if self.peek().kind in ("+", "-"):
            if self.next().kind == "-":
                sign = -1
        c, tup = self.symbol_term()
        out.append((sign * c, tup))
        while self.peek().kind in ("+", "-"):
            sign = 1 if self.next().kind == "+" else -1
            c, tup = self.symbol_term()
            out.append((sign * c, tup))
        return out

    # -- forms -------------------------------------------------------------------

    def form_sum(self):
        out = []
        sign = 1
        if self.peek().kind in ("+", "-"):
            if self.next().kind == "-":
                sign = -1
        out.append((sign, self.form_term()))
        while self.peek().kind in ("+", "-"):
            sign = 1 if self.next().kind == "+" else -1
            out.append((sign, self.form_term()))
        return out

    def form_term(self):
        factors = [self.factor()]
        while self.peek().kind in ("*", "/"):
            op = self.next().kind
            rhs = self.factor()
            if op == "/":
                factors[-1] = ("div", factors[-1], rhs)
            else:
                factors.append(rhs)
        word = []
        while self.peek().kind == "∧":
            self.next()
            word.append(self.factor())
        return factors, word


def parse_expr(text):
    """Text to AST; the whole input must be one expression."""
    p = _Parser(text)
    node = p.expr()
    if not p.at_end():
        p.fail()
    return node


def to_elem(ast, algebra):
    """Evaluate an expression AST in the given algebra."""
    kind = ast[0]
    if kind == "num":
        return algebra.const(ast[1])
    if kind == "var":
        return algebra.var(ast[1])
    if kind == "neg":
        return -to_elem(ast[1], algebra)
    if kind == "add":
        return to_elem(ast[1], algebra) + to_elem(ast[2], algebra)
    if kind == "sub":
        return to_elem(ast[1], algebra) - to_elem(ast[2], algebra)
    if kind == "mul":
        return to_elem(ast[1], algebra) * to_elem(ast[2], algebra)
    if kind == "div":
        den = to_elem(ast[2], algebra)
        if not den.is_unit():
            raise ValueError("division by non-unit")
        return to_elem(ast[1], algebra) * algebra.invert(den)
    if kind == "pow":
        base = to_elem(ast[1], algebra)
        e = ast[2]
        if e < 0 and not base.is_unit():
            raise ValueError("negative exponent on non-invertible variable")
        return base ** e
    if kind == "call":
        arg = to_elem(ast[2], algebra)
        if ast[1] == "exp":
            return algebra.exp_nil(arg)
        return algebra.log1p(arg - algebra.one())
    raise ValueError(f"unknown AST node {kind!r}")


def parse_element(text, algebra):
    return to_elem(parse_expr(text), algebra)


def parse_symbol_sum(text, algebra):
    p = _Parser(text)
    terms = p.symbol_sum()
    if not p.at_end():
        p.fail()
    out = None
    for c, tup in terms:
        entries = tuple(to_elem(node, algebra) for node in tup)
        s = c * SymbolSum(algebra, len(entries), [(1, entries)])
        out = s if out is None else out + s
    return out


def _differential_index(algebra, name):
    if not name.startswith("d"):
        return None
    tail = name[1:]
    if tail in algebra.nil_index:
        return algebra.nil_index[tail]
    if tail in algebra.param_index:
        return algebra.m + algebra.param_index[tail]
    return None


def parse_form(text, algebra):
    """Parse 'c * mono * dW' sums back into a Form."""
    p = _Parser(text)
    groups = p.form_sum()
    degree = None
    terms = {}
    for sign, (factors, wedge_tail) in groups:
        coeff = Fraction(sign)
        elem = algebra.one()
        idxs = []
        # differentials may arrive '*'-joined before the '∧' tail
        nodes = factors + wedge_tail
        for node in nodes:
            base = node
            if base[0] == "var":
                idx = _differential_index(algebra, base[1])
                if idx is not None:
                    idxs.append(idx)
                    continue
            if idxs:
                raise ValueError("coefficient after differential")
            elem = elem * to_elem(node, algebra)
        if len(set(idxs)) != len(idxs):
            raise ValueError("repeated differential")
        inversions = sum(1 for i in range(len(idxs))
                         for j in range(i + 1, len(idxs)) if idxs[i] > idxs[j])
        coeff *= (-1) ** inversions
        word = tuple(sorted(idxs))
        if degree is None:
            degree = len(word)
        elif degree != len(word):
            raise ValueError("mixed form degrees")
        part = coeff * elem
        for mono, c in part.terms.items():
            key = (mono, word)
            val = terms.get(key, 0) + c
            if val:
                terms[key] = val
            else:
                terms.pop(key, None)
    return Form(algebra, degree or 0, terms)


def polynomial_terms(text, m=None):
    """Parse a polynomial in the nilpotent variables into {texp: Fraction}."""
    ast = parse_expr(text)
    names = set()

    def walk(node):
        if node[0] == "var":
            names.add(node[1])
        elif node[0] == "call":
            raise ValueError("exp/log not allowed in polynomials")
        for sub in node[1:]:
            if isinstance(sub, tuple):
                walk(sub)

    walk(ast)
    if m is None:
        if names == {"t"}:
            m = 1
        else:
            idx = []
            for name in names:
                if not (name.startswith("t") and name[1:].isdigit()):
                    raise ValueError(f"unknown variable {name!r}")
                idx.append(int(name[1:]))
            if not idx or min(idx) < 1:
                raise ValueError("no nilpotent variables found")
            m = max(idx)
    index = {"t": 0} if m == 1 else {}
    for i in range(m):
        index[f"t{i + 1}"] = i

    def ev(node):
        kind = node[0]
        if kind == "num":
            return {(0,) * m: node[1]}
        if kind == "var":
            if node[1] not in index:
                raise ValueError(f"unknown variable {node[1]!r}")
            e = [0] * m
            e[index[node[1]]] = 1
            return {tuple(e): Fraction(1)}
        if kind == "neg":
            return {k: -c for k, c in ev(node[1]).items()}
        if kind in ("add", "sub"):
            out = dict(ev(node[1]))
            s = 1 if kind == "add" else -1
            for k, c in ev(node[2]).items():
                v = out.get(k, 0) + s * c
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
            return out
        if kind == "mul":
            left, right = ev(node[1]), ev(node[2])
            out = {}
            for k1, c1 in left.items():
                for k2, c2 in right.items():
                    k = tuple(a + b for a, b in zip(k1, k2))
                    v = out.get(k, 0) + c1 * c2
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
            return out
        if kind == "div":
            den = ev(node[2])
            if set(den) - {(0,) * m}:
                raise ValueError("division by non-unit")
            c0 = den.get((0,) * m, 0)
            if not c0:
                raise ValueError("division by non-unit")
            return {k: c / c0 for k, c in ev(node[1]).items()}
        if kind == "pow":
            if node[2] < 0:
                raise ValueError("negative exponent on non-invertible variable")
            out = {(0,) * m: Fraction(1)}
            base = ev(node[1])
            for _ in range(node[2]):
                nxt = {}
                for k1, c1 in out.items():
                    for k2, c2 in base.items():
                        k = tuple(a + b for a, b in zip(k1, k2))
                        v = nxt.get(k, 0) + c1 * c2
                        if v:
                            nxt[k] = v
                        else:
                            nxt.pop(k, None)
                out = nxt
            return out
        raise ValueError(f"unknown AST node {kind!r}")

    return ev(ast)


def algebra_to_json(algebra):
    return algebra.describe()


def algebra_from_json(data):
    m = int(data["nilpotents"])
    bound = int(data["bound"])
    ideal = [polynomial_terms(src, m) for src in data.get("ideal", [])]
    params = [(p["name"], bool(p.get("invertible", False)))
              for p in data.get("params", [])]
    return Algebra(m, bound, ideal=ideal, params=params)
