"""Text format (.rhm) for Sullivan and Quillen models, plus the built-in
catalog of standard models.

Grammar (line oriented, '#' comments):

    model <name> : sullivan|quillen
    gen <name> : <degree>
    d <name> = <expr>

Expressions are rational-coefficient sums; products use explicit '*', powers
'^' (Sullivan only), brackets '[a, b]' (Quillen only).  '0' is allowed.
"""
from __future__ import annotations

from fractions import Fraction

from .commutative import Element, Generator
from .errors import (BadParameter, DegreeError, ModelSyntaxError,
                     OddSquareError, UnknownCatalogEntry, UnknownGenerator,
                     ValidationError)
from .lie import FreeLie, LieElement, LieGenerator
from .quillen import DGLModel
from .sullivan import SullivanModel, tensor_product

_ONE = Fraction(1)


# --- tokenizer ---------------------------------------------------------------

_SYMBOLS = set("+-*/^[],")


def _tokenize(text: str, line: int, col0: int):
    """Yield (kind, value, col) with kind in {'int', 'ident', 'sym'}."""
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        col = col0 + i
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), col))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("ident", text[i:j], col))
            i = j
        elif ch in _SYMBOLS:
            tokens.append(("sym", ch, col))
            i += 1
        else:
            raise ModelSyntaxError(f"unexpected character {ch!r}", line, col)
    return tokens


class _ExprParser:
    """Recursive-descent parser shared by both model kinds."""

    def __init__(self, tokens, line, kind, env):
        self.tokens = tokens
        self.pos = 0
        self.line = line
        self.kind = kind          # "sullivan" | "quillen"
        self.env = env            # name -> algebra/lie handle (see below)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        t = self.peek()
        if t is None:
            raise ModelSyntaxError("unexpected end of expression", self.line)
        self.pos += 1
        return t

    def expect_sym(self, s):
        t = self.next()
        if t[0] != "sym" or t[1] != s:
            raise ModelSyntaxError(f"expected {s!r}", self.line, t[2])
        return t

    def parse(self):
        e = self.expr()
        t = self.peek()
        if t is not None:
            raise ModelSyntaxError(f"trailing input {t[1]!r}", self.line, t[2])
        return e

    def expr(self, stop=("",)):
        total = self.env.zero()
        sign = 1
        t = self.peek()
        if t and t[:2] == ("sym", "-"):
            self.next()
            sign = -1
        elif t and t[:2] == ("sym", "+"):
            self.next()
        while True:
            total = self.env.add(total, self.term().scale(sign))
            t = self.peek()
            if t is None or (t[0] == "sym" and t[1] in (",", "]")):
                return total
            if t[0] == "sym" and t[1] in "+-":
                self.next()
                sign = 1 if t[1] == "+" else -1
            else:
                raise ModelSyntaxError(f"expected '+' or '-', got {t[1]!r}",
                                       self.line, t[2])

    def term(self):
        coeff = _ONE
        value = None            # the non-scalar part, at most one for quillen
        saw_zero = False
        while True:
            t = self.next()
            if t[0] == "int":
                num = t[1]
                nxt = self.peek()
                if nxt and nxt[:2] == ("sym", "/"):
                    self.next()
                    d = self.next()
                    if d[0] != "int" or d[1] == 0:
                        raise ModelSyntaxError("bad rational literal",
                                               self.line, d[2])
                    coeff *= Fraction(num, d[1])
                else:
                    coeff *= num
                if num == 0:
                    saw_zero = True
            elif t[0] == "ident":
                value = self.env.combine(value, self.factor_ident(t), self.line, t[2])
            elif t[:2] == ("sym", "["):
                value = self.env.combine(value, self.factor_bracket(t), self.line, t[2])
            else:
                raise ModelSyntaxError(f"unexpected {t[1]!r}", self.line, t[2])
            nxt = self.peek()
            if nxt and nxt[:2] == ("sym", "*"):
                self.next()
                continue
            break
        if value is None:
            if coeff == 0 or saw_zero:
                return self.env.zero()
            raise DegreeError("a bare nonzero constant is not homogeneous",
                              self.line)
        return value.scale(coeff)

    def factor_ident(self, t):
        name = t[1]
        if name not in self.env.names:
            raise UnknownGenerator(f"unknown generator {name!r}", self.line, t[2])
        exp = 1
        nxt = self.peek()
        if nxt and nxt[:2] == ("sym", "^"):
            self.next()
            e = self.next()
            if e[0] != "int" or e[1] < 1:
                raise ModelSyntaxError("bad exponent", self.line, e[2])
            exp = e[1]
        return self.env.power(name, exp, self.line, t[2])

    def factor_bracket(self, t):
        if self.kind != "quillen":
            raise ModelSyntaxError("brackets are only valid in quillen models",
                                   self.line, t[2])
        a = self.expr()
        self.expect_sym(",")
        b = self.expr()
        self.expect_sym("]")
        return self.env.bracket(a, b)


class _SullivanEnv:
    def __init__(self, algebra):
        self.algebra = algebra
        self.names = set(algebra.by_name)

    def zero(self):
        return Element.zero()

    def add(self, a, b):
        return a + b

    def power(self, name, exp, line, col):
        g = self.algebra.by_name[name]
        if g.degree % 2 and exp > 1:
            raise OddSquareError(
                f"odd generator {name!r} cannot be squared", line, col)
        return self.algebra.from_monomial(((g.index, exp),))

    def combine(self, value, factor, line, col):
        if value is None:
            return factor
        return self.algebra.multiply(value, factor)


class _QuillenEnv:
    def __init__(self, lie):
        self.lie = lie
        self.names = set(lie.by_name)

    def zero(self):
        return LieElement.zero()

    def add(self, a, b):
        return a + b

    def power(self, name, exp, line, col):
        if exp != 1:
            raise ModelSyntaxError("powers are not defined in a Lie model",
                                   line, col)
        return self.lie.gen(name)

    def bracket(self, a, b):
        return self.lie.bracket(a, b)

    def combine(self, value, factor, line, col):
        if value is not None:
            raise ModelSyntaxError(
                "products of Lie elements are not defined", line, col)
        return factor


# --- parse -------------------------------------------------------------------

def parse(text: str):
    """Parse .rhm source into a validated SullivanModel or DGLModel."""
    header = None
    gen_lines: list[tuple[str, int, int]] = []
    d_lines: list[tuple[str, str, int, int]] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split(None, 1)
        keyword = parts[0]
        rest = parts[1] if len(parts) > 1 else ""
        if keyword == "model":
            if header is not None:
                raise ModelSyntaxError("duplicate model header", ln)
            if ":" not in rest:
                raise ModelSyntaxError("expected 'model <name> : <kind>'", ln)
            name, kind = (p.strip() for p in rest.split(":", 1))
            if kind not in ("sullivan", "quillen"):
                raise ModelSyntaxError(f"unknown model kind {kind!r}", ln)
            if not name.isidentifier():
                raise ModelSyntaxError(f"bad model name {name!r}", ln)
            header = (name, kind)
        elif keyword == "gen":
            if ":" not in rest:
                raise ModelSyntaxError("expected 'gen <name> : <degree>'", ln)
            name, deg = (p.strip() for p in rest.split(":", 1))
            if not name.isidentifier():
                raise ModelSyntaxError(f"bad generator name {name!r}", ln)
            if not deg.isdigit() or int(deg) < 1:
                raise ModelSyntaxError(f"bad degree {deg!r}", ln)
            gen_lines.append((name, int(deg), ln))
        elif keyword == "d":
            if "=" not in rest:
                raise ModelSyntaxError("expected 'd <name> = <expr>'", ln)
            name, expr = (p.strip() for p in rest.split("=", 1))
            col = raw.index("=") + 2
            d_lines.append((name, expr, ln, col))
        else:
            raise ModelSyntaxError(f"unknown directive {keyword!r}", ln)
    if header is None:
        raise ModelSyntaxError("missing 'model' header", 1)
    name, kind = header
    seen = set()
    for gname, _, ln in gen_lines:
        if gname in seen:
            raise ModelSyntaxError(f"duplicate generator {gname!r}", ln)
        seen.add(gname)

    if kind == "sullivan":
        gens = [Generator(n, d, i) for i, (n, d, _) in enumerate(gen_lines)]
        model_ns = SullivanModel(gens, {}, name=name)
        env = _SullivanEnv(model_ns.algebra)
        shift = +1
        degree_of = model_ns.algebra.degree
        by_name = model_ns.algebra.by_name
    else:
        gens = [LieGenerator(n, d, i) for i, (n, d, _) in enumerate(gen_lines)]
        lie = FreeLie(gens)
        env = _QuillenEnv(lie)
        shift = -1
        degree_of = lie.degree
        by_name = lie.by_name

    diff = {}
    seen_d = set()
    for gname, expr, ln, col in d_lines:
        if gname not in env.names:
            raise UnknownGenerator(f"unknown generator {gname!r}", ln)
        if gname in seen_d:
            raise ModelSyntaxError(f"duplicate differential for {gname!r}", ln)
        seen_d.add(gname)
        tokens = _tokenize(expr, ln, col)
        if not tokens:
            raise ModelSyntaxError("empty differential expression", ln)
        value = _ExprParser(tokens, ln, kind, env).parse()
        if value.is_zero():
            continue
        g = by_name[gname]
        want = g.degree + shift
        if want < 0 or not _is_homog(kind, env, value, want):
            raise DegreeError(
                f"d({gname}) must be homogeneous of degree {want}", ln)
        diff[g.index] = value

    if kind == "sullivan":
        model = SullivanModel([Generator(n, d, i)
                               for i, (n, d, _) in enumerate(gen_lines)],
                              diff, name=name)
        report = model.validate()
    else:
        model = DGLModel(gens, diff, name=name)
        report = model.validate()
    if not report.ok:
        raise ValidationError(
            "; ".join(f"{i.check} ({i.generator}): {i.message}"
                      for i in report.issues))
    return model


def _is_homog(kind, env, value, want):
    if kind == "sullivan":
        return env.algebra.is_homogeneous(value, want)
    return env.lie.is_homogeneous(value, want)


def parse_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


# --- serialize ---------------------------------------------------------------

def _coeff_str(c: Fraction, lead: bool) -> str:
    sign = "-" if c < 0 else ("" if lead else "+")
    mag = abs(c)
    body = f"{mag.numerator}" if mag.denominator == 1 else \
        f"{mag.numerator}/{mag.denominator}"
    return sign, body


def _join_terms(parts: list[tuple[str, str]]) -> str:
    out = []
    for i, (sign, body) in enumerate(parts):
        if i == 0:
            out.append(f"{sign}{body}" if sign == "-" else body)
        else:
            out.append(f"{'-' if sign == '-' else '+'} {body}")
    return " ".join(out)


def _sullivan_element_str(model: SullivanModel, e: Element) -> str:
    alg = model.algebra
    parts = []
    for mono in sorted(e.terms):
        c = e.terms[mono]
        factors = []
        for idx, exp in mono:
            nm = alg.by_index[idx].name
            factors.append(nm if exp == 1 else f"{nm}^{exp}")
        sign, cs = _coeff_str(c, lead=not parts)
        if factors:
            body = "*".join(factors) if abs(c) == 1 else \
                "*".join([cs] + factors)
        else:
            body = cs
        parts.append((sign, body))
    return _join_terms(parts) if parts else "0"


def _bracket_str(lie: FreeLie, seq) -> str:
    s = lie.by_index[seq[0]].name
    for idx in seq[1:]:
        s = f"[{s},{lie.by_index[idx].name}]"
    return s


def _quillen_element_str(model: DGLModel, e: LieElement) -> str:
    lie = model.lie
    deg = lie.degree(e)
    coords = lie.lie_coords(deg, e)
    if coords is None:
        raise ValidationError("differential image escaped the Lie subalgebra")
    _, seqs = lie.lie_basis_with_seqs(deg)
    parts = []
    for c, seq in zip(coords, seqs):
        if not c:
            continue
        sign, cs = _coeff_str(c, lead=not parts)
        body = _bracket_str(lie, seq)
        if abs(c) != 1:
            body = f"{cs}*{body}"
        parts.append((sign, body))
    return _join_terms(parts) if parts else "0"


def serialize(model) -> str:
    """Canonical .rhm text; parse(serialize(m)) equals m structurally."""
    lines = []
    if isinstance(model, SullivanModel):
        lines.append(f"model {model.name or 'unnamed'} : sullivan")
        for g in model.generators:
            lines.append(f"gen {g.name} : {g.degree}")
        for g in model.generators:
            img = model.d_of_generator(g.index)
            if not img.is_zero():
                lines.append(f"d {g.name} = {_sullivan_element_str(model, img)}")
    elif isinstance(model, DGLModel):
        lines.append(f"model {model.name or 'unnamed'} : quillen")
        for g in model.generators:
            lines.append(f"gen {g.name} : {g.degree}")
        for g in model.generators:
            img = model.delta_of_generator(g.index)
            if not img.is_zero():
                lines.append(f"d {g.name} = {_quillen_element_str(model, img)}")
    else:
        raise TypeError(f"cannot serialize {type(model).__name__}")
    return "\n".join(lines) + "\n"


# --- catalog -----------------------------------------------------------------

def _cpn_sullivan(n: int) -> SullivanModel:
    if n < 1:
        raise BadParameter("cpn_sullivan needs n >= 1")
    x = Generator("x", 2, 0)
    y = Generator("y", 2 * n + 1, 1)
    model = SullivanModel([x, y], {}, name=f"CP{n}")
    dy = model.algebra.from_monomial(((0, n + 1),))
    return SullivanModel([x, y], {1: dy}, name=f"CP{n}")


def _cpn_quillen(n: int) -> DGLModel:
    if n < 1:
        raise BadParameter("cpn_quillen needs n >= 1")
    gens = [LieGenerator(f"w{2 * k - 1}", 2 * k - 1, k - 1) for k in range(1, n + 1)]
    lie = FreeLie(gens)
    diff = {}
    for k_idx, g in enumerate(gens):
        k = g.degree
        total = LieElement.zero()
        for i in range(1, k - 1):
            j = (k - 1) - i
            if j < 1:
                continue
            gi = next((h for h in gens if h.degree == i), None)
            gj = next((h for h in gens if h.degree == j), None)
            if gi is None or gj is None:
                continue
            total = total + lie.bracket(lie.gen(gi.name), lie.gen(gj.name)).scale(
                Fraction(1, 2))
        if not total.is_zero():
            diff[g.index] = total
    return DGLModel(gens, diff, name=f"CP{n}q")


def _sphere_odd(k: int) -> SullivanModel:
    if k < 3 or k % 2 == 0:
        raise BadParameter("sphere_odd needs odd k >= 3")
    return SullivanModel([Generator("x", k, 0)], {}, name=f"S{k}")


def _sphere_even(k: int) -> SullivanModel:
    if k < 2 or k % 2:
        raise BadParameter("sphere_even needs even k >= 2")
    x = Generator("x", k, 0)
    y = Generator("y", 2 * k - 1, 1)
    model = SullivanModel([x, y], {}, name=f"S{k}")
    dy = model.algebra.from_monomial(((0, 2),))
    return SullivanModel([x, y], {1: dy}, name=f"S{k}")


def _sphere_odd_quillen(k: int) -> DGLModel:
    if k < 3 or k % 2 == 0:
        raise BadParameter("sphere_odd_quillen needs odd k >= 3")
    return DGLModel([LieGenerator("w", k - 1, 0)], {}, name=f"S{k}q")


def catalog(name: str, *params) -> "SullivanModel | DGLModel":
    """Return a validated catalog model by name.

    Supported: sphere_odd(k), sphere_even(k), cpn_sullivan(n), cpn_quillen(n),
    s2, s2_quillen, sphere_odd_quillen(k), product(<spec>, <spec>).
    """
    def one_int(what):
        if len(params) != 1:
            raise BadParameter(f"{what} takes one integer parameter")
        try:
            return int(params[0])
        except (TypeError, ValueError):
            raise BadParameter(f"{what} takes one integer parameter")

    if name == "cpn_sullivan":
        return _cpn_sullivan(one_int(name))
    if name == "cpn_quillen":
        return _cpn_quillen(one_int(name))
    if name == "sphere_odd":
        return _sphere_odd(one_int(name))
    if name == "sphere_even":
        return _sphere_even(one_int(name))
    if name == "sphere_odd_quillen":
        return _sphere_odd_quillen(one_int(name))
    if name == "s2":
        if params:
            raise BadParameter("s2 takes no parameters")
        return _sphere_even(2)
    if name == "s2_quillen":
        if params:
            raise BadParameter("s2_quillen takes no parameters")
        return DGLModel([LieGenerator("w", 1, 0)], {}, name="S2q")
    if name == "product":
        if len(params) != 2:
            raise BadParameter("product takes two sullivan sub-specs")
        a = catalog_spec(str(params[0]))
        b = catalog_spec(str(params[1]))
        if not isinstance(a, SullivanModel) or not isinstance(b, SullivanModel):
            raise BadParameter("product is defined for sullivan models")
        return tensor_product(a, b)
    raise UnknownCatalogEntry(f"no catalog entry named {name!r}")


CATALOG_NAMES = ("sphere_odd", "sphere_even", "cpn_sullivan", "cpn_quillen",
                 "s2", "s2_quillen", "sphere_odd_quillen", "product")


def catalog_spec(spec: str):
    """Parse specs like 'cpn_sullivan(2)' or 'product(s2, sphere_odd(3))'."""
    spec = spec.strip()
    if "(" not in spec:
        return catalog(spec)
    if not spec.endswith(")"):
        raise UnknownCatalogEntry(f"malformed catalog spec {spec!r}")
    name, inner = spec.split("(", 1)
    inner = inner[:-1]
    # split on top-level commas only
    args, depth, cur = [], 0, ""
    for ch in inner:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            args.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        args.append(cur)
    return catalog(name.strip(), *[a.strip() for a in args])
