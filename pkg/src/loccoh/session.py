"""Line-oriented session scripts: declarations plus computation commands.

Declarations bind rings, ideals and modules to names; commands run engine
operations on declared names.  Parsing reports the first error with line and
column and a stable diagnostic code; execution is deterministic given the
configuration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cech import Box, MonomialModule, cd_scan, cech_cohomology, monomial_exponents
from .groebner import Ideal, RingError, quotient_ring, set_active_cache
from .homology import depth, ext, grade, tor
from .matlis import check_grade_tor
from .modules import ModulePresentation
from .report import VerificationReport
from .rings import Ring
from .verify import (
    verify_duality,
    verify_endo_ring,
    verify_ext_shift,
    verify_flagship,
    verify_grade_vanishing,
    verify_ideal_pair,
)

COMMANDS = ("groebner", "resolve", "hilbert", "ext", "tor", "grade", "depth", "localcoh", "cd", "verify")
DECL_KINDS = ("ring", "ideal", "module")
VERIFY_IDS = ("ps3", "duality", "grade-vanishing", "ext-shift", "ideal-pair", "endo-ring", "grade-tor")


@dataclass
class Diagnostic(Exception):
    code: str
    message: str
    line: int
    col: int

    def __str__(self):
        return f"{self.line}:{self.col}: {self.code}: {self.message}"


# ---------------------------------------------------------------------------
# syntax values

@dataclass
class Expr:
    tokens: list  # (kind, text)

    @property
    def text(self) -> str:
        out = []
        for kind, tok in self.tokens:
            if kind == "op" and tok in "+-":
                out.append(f" {tok} ")
            else:
                out.append(tok)
        return "".join(out)


@dataclass
class ListV:
    items: list


@dataclass
class Call:
    name: str
    args: list  # (key or None, value)


@dataclass
class Declaration:
    kind: str
    name: str
    value: object
    line: int


@dataclass
class Command:
    name: str
    args: list  # strings/ints (raw words)
    line: int


@dataclass
class SessionScript:
    items: list = field(default_factory=list)

    @property
    def declarations(self):
        return [x for x in self.items if isinstance(x, Declaration)]

    @property
    def commands(self):
        return [x for x in self.items if isinstance(x, Command)]


# ---------------------------------------------------------------------------
# tokenization

_SYMBOLS = "[]=(),^*+-"


def _tokenize_line(text: str, line_no: int):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch == "#":
            break
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] in "_-"):
                j += 1
            word = text[i:j]
            # names may contain '-' only for verify statement ids
            tokens.append(("name", word, i))
            i = j
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif text.startswith("**", i):
            tokens.append(("op", "^", i))
            i += 2
        elif ch in _SYMBOLS:
            tokens.append(("op", ch, i))
            i += 1
        else:
            raise Diagnostic("syntax", f"unexpected character {ch!r}", line_no, i + 1)
    return tokens


class _LineParser:
    def __init__(self, tokens, line_no):
        self.tokens = tokens
        self.pos = 0
        self.line = line_no

    def peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return ("end", "", self.tokens[-1][2] + 1 if self.tokens else 0)

    def take(self, kind=None, value=None):
        t = self.peek()
        if (kind and t[0] != kind) or (value and t[1] != value):
            raise Diagnostic("syntax", f"expected {value or kind}, found {t[1] or 'end of line'!r}", self.line, t[2] + 1)
        self.pos += 1
        return t

    def at_end(self):
        return self.pos >= len(self.tokens)

    # -- values ---------------------------------------------------------------
    def value(self):
        t = self.peek()
        if t[0] == "op" and t[1] == "[":
            return self.list_value()
        if t[0] == "name" and self.pos + 1 < len(self.tokens) and self.tokens[self.pos + 1][:2] == ("op", "("):
            return self.call_value()
        return self.expr_value()

    def list_value(self):
        self.take("op", "[")
        items = []
        if self.peek()[:2] != ("op", "]"):
            items.append(self.value())
            while self.peek()[:2] == ("op", ","):
                self.take("op", ",")
                items.append(self.value())
        self.take("op", "]")
        return ListV(items)

    def call_value(self):
        name = self.take("name")[1]
        self.take("op", "(")
        args = []
        if self.peek()[:2] != ("op", ")"):
            args.append(self.call_arg())
            while self.peek()[:2] == ("op", ","):
                self.take("op", ",")
                args.append(self.call_arg())
        self.take("op", ")")
        return Call(name, args)

    def call_arg(self):
        t = self.peek()
        if (
            t[0] == "name"
            and self.pos + 1 < len(self.tokens)
            and self.tokens[self.pos + 1][:2] == ("op", "=")
        ):
            key = self.take("name")[1]
            self.take("op", "=")
            return (key, self.value())
        return (None, self.value())

    def expr_value(self):
        # a polynomial-style expression: names, ints, + - * ^ ( )
        toks = []
        depth_paren = 0
        while not self.at_end():
            t = self.peek()
            if t[0] == "op" and t[1] in ",]" and depth_paren == 0:
                break
            if t[0] == "op" and t[1] == "(":
                depth_paren += 1
            if t[0] == "op" and t[1] == ")":
                if depth_paren == 0:
                    break
                depth_paren -= 1
            if t[0] == "op" and t[1] in "[=":
                raise Diagnostic("syntax", f"unexpected {t[1]!r} in expression", self.line, t[2] + 1)
            toks.append((t[0], t[1]))
            self.pos += 1
        if not toks:
            t = self.peek()
            raise Diagnostic("syntax", "expected a value", self.line, t[2] + 1)
        return Expr(toks)


# ---------------------------------------------------------------------------
# parsing

def parse_session(text: str) -> SessionScript:
    script = SessionScript()
    declared: dict[str, str] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize_line(raw, line_no)
        if not tokens:
            continue
        lp = _LineParser(tokens, line_no)
        head = lp.take("name")[1]
        if head in DECL_KINDS:
            name = lp.take("name")[1]
            if name in declared:
                raise Diagnostic("redeclared", f"name {name!r} already declared", line_no, 1)
            lp.take("op", "=")
            value = lp.value()
            if not lp.at_end():
                t = lp.peek()
                raise Diagnostic("syntax", f"trailing input {t[1]!r}", line_no, t[2] + 1)
            _check_names(value, declared, line_no)
            declared[name] = head
            script.items.append(Declaration(head, name, value, line_no))
        elif head in COMMANDS:
            args = []
            while not lp.at_end():
                t = lp.peek()
                if t[0] in ("name", "int"):
                    args.append(lp.take()[1])
                else:
                    raise Diagnostic("syntax", f"unexpected {t[1]!r} in command", line_no, t[2] + 1)
            _check_command(head, args, declared, line_no)
            script.items.append(Command(head, args, line_no))
        else:
            raise Diagnostic("unknown-command", f"unknown command or declaration {head!r}", line_no, 1)
    return script


_ARITIES = {
    "groebner": ("I",),
    "resolve": ("M", "#"),
    "hilbert": ("M", "#"),
    "ext": ("#", "M", "M"),
    "tor": ("#", "M", "M"),
    "grade": ("I", "M"),
    "depth": ("M",),
    "localcoh": ("#", "I", "M"),
    "cd": ("I", "M"),
}


def _check_command(head: str, args, declared, line_no):
    if head == "verify":
        if not args:
            raise Diagnostic("arity", "verify needs a statement id", line_no, 1)
        if args[0] not in VERIFY_IDS:
            raise Diagnostic("unknown-command", f"unknown verify statement {args[0]!r}", line_no, 1)
        for a in args[1:]:
            if not a.lstrip("-").isdigit() and a not in declared:
                raise Diagnostic("undeclared-name", f"name {a!r} not declared", line_no, 1)
        return
    spec = _ARITIES[head]
    if len(args) != len(spec):
        raise Diagnostic("arity", f"{head} takes {len(spec)} arguments, got {len(args)}", line_no, 1)
    for a, kind in zip(args, spec):
        if kind == "#":
            if not a.lstrip("-").isdigit():
                raise Diagnostic("arity", f"{head} expects an integer, got {a!r}", line_no, 1)
        else:
            if a not in declared:
                raise Diagnostic("undeclared-name", f"name {a!r} not declared", line_no, 1)


def _check_names(value, declared, line_no):
    if isinstance(value, Call):
        for _, v in value.args:
            _check_names(v, declared, line_no)
    elif isinstance(value, ListV):
        for v in value.items:
            _check_names(v, declared, line_no)
    elif isinstance(value, Expr):
        if len(value.tokens) == 1 and value.tokens[0][0] == "name":
            return  # bare name: declared object or a ring variable, resolved on execute
    return


def pretty(script: SessionScript) -> str:
    lines = []
    for item in script.items:
        if isinstance(item, Declaration):
            lines.append(f"{item.kind} {item.name} = {_fmt(item.value)}")
        else:
            lines.append(" ".join([item.name] + [str(a) for a in item.args]))
    return "\n".join(lines) + "\n"


def _fmt(value) -> str:
    if isinstance(value, Call):
        parts = [f"{k}={_fmt(v)}" if k else _fmt(v) for k, v in value.args]
        return f"{value.name}({', '.join(parts)})"
    if isinstance(value, ListV):
        return "[" + ", ".join(_fmt(v) for v in value.items) + "]"
    if isinstance(value, Expr):
        return value.text
    return str(value)


# ---------------------------------------------------------------------------
# execution

@dataclass
class Config:
    p: int = 32003
    window_lo: int = -6
    window_hi: int = 6
    alpha_max: int = 3
    degree_cap: int = 40
    fmt: str = "json"
    no_cache: bool = False
    cache_dir: str | None = None

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "window": [self.window_lo, self.window_hi],
            "alpha_max": self.alpha_max,
            "degree_cap": self.degree_cap,
            "cache": not self.no_cache,
        }


def _expr_text(value, line=0):
    """The text of a bare name or integer value, None for missing."""
    if value is None:
        return None
    if isinstance(value, Expr):
        return value.text
    raise Diagnostic("syntax", "expected a simple value", line, 1)


class ModuleValue:
    """A declared module: monomial data when available, presentations lazily."""

    def __init__(self, ring: Ring, mono: MonomialModule | None, pres: ModulePresentation | None = None):
        self.ring = ring
        self.mono = mono
        self._pres = pres

    def presentation(self) -> ModulePresentation:
        if self._pres is None:
            self._pres = self.mono.zgraded_presentation()
        return self._pres

    def monomial(self, line: int) -> MonomialModule:
        if self.mono is None:
            raise Diagnostic("arity", "this command needs a monomial module", line, 1)
        return self.mono


class Executor:
    def __init__(self, config: Config):
        self.config = config
        self.env: dict[str, object] = {}

    def window(self, n: int) -> Box:
        return Box(self.config.window_lo, self.config.window_hi, n)

    # -- declaration values ----------------------------------------------------
    def eval_ring(self, value, line) -> Ring:
        if isinstance(value, Expr):
            return self._lookup(value, line, Ring)
        if not isinstance(value, Call):
            raise Diagnostic("syntax", "expected a ring constructor", line, 1)
        if value.name == "poly":
            kw = {k: v for k, v in value.args if k}
            p = int(_expr_text(kw.get("p"), line) or self.config.p)
            vars_v = kw.get("vars")
            if not isinstance(vars_v, ListV):
                raise Diagnostic("arity", "poly needs vars=[...]", line, 1)
            names = [_expr_text(v, line) for v in vars_v.items]
            order = _expr_text(kw.get("order"), line) or "degrevlex"
            try:
                return Ring.poly_ring(p, names, order)
            except RingError as e:
                raise Diagnostic("arity", str(e), line, 1)
        if value.name == "quotient":
            if len(value.args) != 2:
                raise Diagnostic("arity", "quotient(S, [gens])", line, 1)
            base = self.eval_ring(value.args[0][1], line)
            gens = self._polys(value.args[1][1], base, line)
            return quotient_ring(base, gens)
        raise Diagnostic("unknown-command", f"unknown ring constructor {value.name!r}", line, 1)

    def eval_ideal(self, value, line) -> Ideal:
        if isinstance(value, Expr):
            return self._lookup(value, line, Ideal)
        if isinstance(value, Call) and value.name == "ideal":
            if len(value.args) != 2:
                raise Diagnostic("arity", "ideal(R, [gens])", line, 1)
            ring = self.eval_ring(value.args[0][1], line)
            return Ideal(ring, self._polys(value.args[1][1], ring, line))
        raise Diagnostic("unknown-command", "expected ideal(R, [gens])", line, 1)

    def eval_module(self, value, line) -> ModuleValue:
        if isinstance(value, Expr):
            return self._lookup(value, line, ModuleValue)
        if not isinstance(value, Call):
            raise Diagnostic("syntax", "expected a module constructor", line, 1)
        if value.name == "cyclic":
            if len(value.args) != 2:
                raise Diagnostic("arity", "cyclic(R, [gens])", line, 1)
            ring = self.eval_ring(value.args[0][1], line)
            polys = self._polys(value.args[1][1], ring, line)
            mono = None
            try:
                mono = MonomialModule.cyclic(ring, polys)
            except RingError:
                mono = None
            pres = ModulePresentation.cyclic(ring, polys, "Z")
            return ModuleValue(ring, mono, pres)
        if value.name == "coker":
            if len(value.args) != 2:
                raise Diagnostic("arity", "coker(R, [[rows]])", line, 1)
            ring = self.eval_ring(value.args[0][1], line)
            rows_v = value.args[1][1]
            if not isinstance(rows_v, ListV):
                raise Diagnostic("arity", "coker needs a list of rows", line, 1)
            cols = None
            entries = []
            for rv in rows_v.items:
                if not isinstance(rv, ListV):
                    raise Diagnostic("arity", "each row must be a list", line, 1)
                row = self._polys(rv, ring, line)
                if cols is None:
                    cols = len(row)
                elif len(row) != cols:
                    raise Diagnostic("arity", "ragged matrix", line, 1)
                entries.append(row)
            from .groebner import GradedMatrix, GradingError, vec_degree

            zero = 0
            try:
                colvecs = []
                mat0 = [[f for f in row] for row in entries]
                tmp = GradedMatrix(ring, mat0, [zero] * len(entries), [0] * (cols or 0), "Z", check=False)
                col_shifts = []
                for jc in range(cols or 0):
                    v = tmp.column(jc)
                    col_shifts.append(vec_degree(v, [zero] * len(entries), "Z") if v else 0)
                mat = GradedMatrix(ring, mat0, [zero] * len(entries), col_shifts, "Z")
            except GradingError as e:
                raise Diagnostic("arity", str(e), line, 1)
            return ModuleValue(ring, None, ModulePresentation(ring, mat, "Z"))
        if value.name == "directsum":
            parts = [self.eval_module(v, line) for _, v in value.args]
            if not parts:
                raise Diagnostic("arity", "directsum needs arguments", line, 1)
            ring = parts[0].ring
            mono = None
            if all(pv.mono is not None for pv in parts):
                mono = MonomialModule.direct_sum(*[pv.mono for pv in parts])
            pres = ModulePresentation.direct_sum(*[pv.presentation() for pv in parts])
            return ModuleValue(ring, mono, pres)
        raise Diagnostic("unknown-command", f"unknown module constructor {value.name!r}", line, 1)

    def _lookup(self, expr: Expr, line, want):
        if len(expr.tokens) == 1 and expr.tokens[0][0] == "name":
            name = expr.tokens[0][1]
            got = self.env.get(name)
            if got is None:
                raise Diagnostic("undeclared-name", f"name {name!r} not declared", line, 1)
            if not isinstance(got, want):
                raise Diagnostic("arity", f"{name!r} is not a {want.__name__}", line, 1)
            return got
        raise Diagnostic("syntax", f"expected a name, found expression {expr.text!r}", line, 1)

    def _polys(self, value, ring: Ring, line):
        if not isinstance(value, ListV):
            raise Diagnostic("arity", "expected a list of polynomials", line, 1)
        out = []
        for v in value.items:
            if not isinstance(v, Expr):
                raise Diagnostic("syntax", "expected a polynomial expression", line, 1)
            try:
                out.append(ring.parse(v.text))
            except RingError as e:
                raise Diagnostic("syntax", f"bad polynomial {v.text!r}: {e}", line, 1)
        return out

    # -- commands ---------------------------------------------------------------
    def run(self, script: SessionScript):
        results = []
        for item in script.items:
            if isinstance(item, Declaration):
                if item.kind == "ring":
                    self.env[item.name] = self.eval_ring(item.value, item.line)
                elif item.kind == "ideal":
                    self.env[item.name] = self.eval_ideal(item.value, item.line)
                else:
                    self.env[item.name] = self.eval_module(item.value, item.line)
            else:
                results.append(self.command(item))
        return results

    def _arg(self, item: Command, idx: int, want):
        name = item.args[idx]
        got = self.env.get(name)
        if got is None:
            raise Diagnostic("undeclared-name", f"name {name!r} not declared", item.line, 1)
        if want is ModuleValue and not isinstance(got, ModuleValue):
            raise Diagnostic("arity", f"{name!r} is not a module", item.line, 1)
        if want is Ideal and not isinstance(got, Ideal):
            raise Diagnostic("arity", f"{name!r} is not an ideal", item.line, 1)
        return got

    def command(self, item: Command):
        name = item.name
        try:
            if name == "groebner":
                ideal = self._arg(item, 0, Ideal)
                return {"command": "groebner", "basis": [str(g) for g in ideal.groebner_basis()]}
            if name == "resolve":
                mv = self._arg(item, 0, ModuleValue)
                length = int(item.args[1])
                res = mv.presentation().resolution(length)
                betti = {f"{i},{d}": v for (i, d), v in sorted(res.betti().items())}
                return {"command": "resolve", "total_betti": res.total_betti(), "betti": betti, "complete": res.complete}
            if name == "hilbert":
                mv = self._arg(item, 0, ModuleValue)
                d = int(item.args[1])
                return {"command": "hilbert", "degree": d, "value": mv.presentation().hilbert_function(d)}
            if name in ("ext", "tor"):
                i = int(item.args[0])
                nv = self._arg(item, 1, ModuleValue)
                mv = self._arg(item, 2, ModuleValue)
                fn = ext if name == "ext" else tor
                mod = fn(i, nv.presentation(), mv.presentation())
                table = {}
                for d in range(self.config.window_lo, self.config.window_hi + 1):
                    v = mod.hilbert_function(d)
                    if v:
                        table[str(d)] = v
                return {"command": name, "i": i, "hilbert": table, "zero": mod.is_zero()}
            if name == "grade":
                ideal = self._arg(item, 0, Ideal)
                mv = self._arg(item, 1, ModuleValue)
                g = grade(ideal, mv.presentation())
                return {"command": "grade", "value": "infinite" if g.is_infinite else g.value}
            if name == "depth":
                mv = self._arg(item, 0, ModuleValue)
                g = depth(mv.presentation())
                return {"command": "depth", "value": "infinite" if g.is_infinite else g.value}
            if name == "localcoh":
                i = int(item.args[0])
                ideal = self._arg(item, 1, Ideal)
                mv = self._arg(item, 2, ModuleValue)
                mono = mv.monomial(item.line)
                h = cech_cohomology(i, monomial_exponents(ideal), mono, self.window(mono.ring.n))
                pieces = {",".join(map(str, a)): dim for a, dim in h.support()}
                return {"command": "localcoh", "i": i, "nonzero_pieces": pieces, "total": h.total_dim_on_window()}
            if name == "cd":
                ideal = self._arg(item, 0, Ideal)
                mv = self._arg(item, 1, ModuleValue)
                mono = mv.monomial(item.line)
                return {
                    "command": "cd",
                    "value": cd_scan(monomial_exponents(ideal), mono, self.window(mono.ring.n)),
                    "semantics": "lower bound from window scan",
                }
            if name == "verify":
                return self.verify(item)
        except Diagnostic:
            raise
        except (RingError, Exception) as e:
            if isinstance(e, Diagnostic):
                raise
            raise Diagnostic("engine-error", f"{type(e).__name__}: {e}", item.line, 1)
        raise Diagnostic("unknown-command", f"unknown command {name!r}", item.line, 1)

    def verify(self, item: Command) -> VerificationReport:
        sid = item.args[0]
        rest = item.args[1:]
        if sid == "ps3":
            return verify_flagship(self.config.p, Box(self.config.window_lo, self.config.window_hi, 4))
        if sid == "duality":
            nv = self._arg_at(rest, 0, item)
            mv = self._arg_at(rest, 1, item)
            i_max = int(rest[2]) if len(rest) > 2 else 2
            return verify_duality(nv.presentation(), mv.presentation(), i_max,
                                  (self.config.window_lo, self.config.window_hi))
        if sid == "grade-vanishing":
            ideal = self._arg_at(rest, 0, item, Ideal)
            mv = self._arg_at(rest, 1, item)
            mono = mv.mono if mv.mono is not None else mv.presentation()
            return verify_grade_vanishing(ideal, mono, self.window(ideal.ring.n))
        if sid == "ext-shift":
            ideal = self._arg_at(rest, 0, item, Ideal)
            mv = self._arg_at(rest, 1, item)
            i_range = [int(a) for a in rest[2:]] or [0, 1, 2]
            return verify_ext_shift(ideal, mv.monomial(item.line), i_range, self.window(ideal.ring.n))
        if sid == "ideal-pair":
            j = self._arg_at(rest, 0, item, Ideal)
            i = self._arg_at(rest, 1, item, Ideal)
            mv = self._arg_at(rest, 2, item)
            mono = mv.mono if mv.mono is not None else mv.presentation()
            return verify_ideal_pair(j, i, mono, self.config.alpha_max, self.window(j.ring.n))
        if sid == "endo-ring":
            ideal = self._arg_at(rest, 0, item, Ideal)
            mv = self._arg_at(rest, 1, item)
            return verify_endo_ring(ideal, mv.monomial(item.line), self.window(ideal.ring.n))
        if sid == "grade-tor":
            ideal = self._arg_at(rest, 0, item, Ideal)
            mv = self._arg_at(rest, 1, item)
            return check_grade_tor(ideal, mv.presentation(), (self.config.window_lo, self.config.window_hi))
        raise Diagnostic("unknown-command", f"unknown verify statement {sid!r}", item.line, 1)

    def _arg_at(self, rest, idx, item, want=None):
        if idx >= len(rest):
            raise Diagnostic("arity", f"verify {item.args[0]} needs more arguments", item.line, 1)
        got = self.env.get(rest[idx])
        if got is None:
            raise Diagnostic("undeclared-name", f"name {rest[idx]!r} not declared", item.line, 1)
        if want is Ideal and not isinstance(got, Ideal):
            raise Diagnostic("arity", f"{rest[idx]!r} is not an ideal", item.line, 1)
        if want is None and not isinstance(got, ModuleValue):
            raise Diagnostic("arity", f"{rest[idx]!r} is not a module", item.line, 1)
        return got


def execute(script: SessionScript, config: Config | None = None):
    """Run a parsed script; returns the accumulated results."""
    config = config or Config()
    cache = None
    if not config.no_cache:
        from .cache import GroebnerCache

        try:
            cache = GroebnerCache(config.cache_dir)
        except OSError:
            cache = None
    set_active_cache(cache)
    try:
        return Executor(config).run(script)
    finally:
        set_active_cache(None)
