"""Parser for GSPEC instance files.

One statement per line, ``#`` starts a comment::

    group E = Z2 x Z4
    group T = 1
    form w : E x E -> A = [[0,1];[1,0]]
    heisenberg H = H(E,F,A,w)
    heisenberg S = standard(E,A)
    heisenberg M = mackey_weil(E)
    duality d = standard(A)
    duality e : K = form w
    table G = file "d4.txt"

A form entry is an integer (rank-one target) or a tuple ``(a,b,...)`` of
coordinates in ``A``.  Every error is a :class:`GspecError` carrying the
line and column, except :class:`BoundExceeded`, which passes through.
"""

import re
from dataclasses import dataclass, field
from pathlib import Path

from .abelian import FiniteAbelianGroup
from .bilinear import BilinearForm
from .errors import BoundExceeded, HeiskitError, InputError
from .grouptable import parse_table
from .heisenberg import HeisenbergGroup, mackey_weil, standard_heisenberg
from .symplectic import SelfDuality, standard_self_duality


class GspecError(InputError):
    def __init__(self, line, col, message):
        self.line, self.col = line, col
        super().__init__(f"{line}:{col}: {message}")


@dataclass
class InstanceSpec:
    """Named declarations in file order."""

    groups: dict = field(default_factory=dict)
    forms: dict = field(default_factory=dict)
    heisenbergs: dict = field(default_factory=dict)
    dualities: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)

    def kind_of(self, name):
        for kind in ("groups", "forms", "heisenbergs", "dualities", "tables"):
            if name in getattr(self, kind):
                return kind
        return None

    def is_empty(self):
        return not any((self.groups, self.forms, self.heisenbergs, self.dualities, self.tables))


_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<arrow>->)
  | (?P<string>"[^"]*")
  | (?P<int>-?\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<punct>[()\[\],;:=])
""", re.VERBOSE)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    col: int


def _tokenize(line, lineno):
    pos, out = 0, []
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if not m:
            raise GspecError(lineno, pos + 1, f"unexpected character {line[pos]!r}")
        if m.lastgroup != "ws":
            out.append(_Tok(m.lastgroup, m.group(), pos + 1))
        pos = m.end()
    return out


class _Line:
    def __init__(self, toks, lineno, length):
        self.toks, self.i, self.lineno, self.end = toks, 0, lineno, length + 1

    def error(self, message, tok=None):
        tok = tok if tok is not None else self.peek()
        return GspecError(self.lineno, tok.col if tok else self.end, message)

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self, kind=None, text=None):
        tok = self.peek()
        want = text or kind
        if tok is None:
            raise self.error(f"expected {want!r}, found end of line" if want else "unexpected end of line")
        if (kind and tok.kind != kind) or (text and tok.text != text):
            raise self.error(f"expected {want!r}, found {tok.text!r}", tok)
        self.i += 1
        return tok

    def accept(self, text):
        tok = self.peek()
        if tok is not None and tok.text == text:
            self.i += 1
            return True
        return False

    def done(self):
        tok = self.peek()
        if tok is not None:
            raise self.error(f"unexpected {tok.text!r}", tok)


def parse_spec(text, base_dir=None):
    """Parse GSPEC text; ``table`` paths are resolved against ``base_dir``."""
    spec = InstanceSpec()
    base = Path(base_dir) if base_dir is not None else Path.cwd()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        toks = _tokenize(line, lineno)
        p = _Line(toks, lineno, len(line.rstrip()))
        try:
            _statement(p, spec, base)
        except (GspecError, BoundExceeded):
            raise
        except (HeiskitError, ValueError, OverflowError, MemoryError) as exc:
            raise GspecError(lineno, toks[0].col, str(exc) or type(exc).__name__) from None
    return spec


def _statement(p, spec, base):
    kw = p.next("ident")
    handlers = {"group": _group, "form": _form, "heisenberg": _heisenberg,
                "duality": _duality, "table": _table}
    if kw.text not in handlers:
        raise p.error(f"unknown statement {kw.text!r}", kw)
    name_tok = p.next("ident")
    if spec.kind_of(name_tok.text):
        raise p.error(f"{name_tok.text!r} is already declared", name_tok)
    handlers[kw.text](p, spec, name_tok, base)
    p.done()


def _ref(p, spec, kind, what):
    tok = p.next("ident")
    table = getattr(spec, kind)
    if tok.text not in table:
        found = spec.kind_of(tok.text)
        detail = f"is a {found[:-1]}, not a {what}" if found else "is not declared"
        raise p.error(f"{tok.text!r} {detail}", tok)
    return table[tok.text]


def _group(p, spec, name, base):
    p.next(text="=")
    tok = p.peek()
    if tok is not None and tok.kind == "int":
        p.next()
        if tok.text != "1":
            raise p.error("the only numeric group literal is 1 (the trivial group)", tok)
        spec.groups[name.text] = FiniteAbelianGroup(())
        return
    orders = [_cyclic_factor(p)]
    while p.accept("x"):
        orders.append(_cyclic_factor(p))
    spec.groups[name.text] = FiniteAbelianGroup(tuple(orders))


def _cyclic_factor(p):
    tok = p.next("ident")
    m = re.fullmatch(r"Z(\d+)", tok.text)
    if not m:
        raise p.error(f"expected a cyclic factor like Z4, found {tok.text!r}", tok)
    n = int(m.group(1))
    if n < 2:
        raise p.error(f"cyclic factor order must be at least 2, got {n}", tok)
    return n


def _form(p, spec, name, base):
    p.next(text=":")
    E = _ref(p, spec, "groups", "group")
    p.next(text="x")
    F = _ref(p, spec, "groups", "group")
    p.next(text="->")
    A = _ref(p, spec, "groups", "group")
    eq = p.next(text="=")
    rows = _matrix(p)
    for i, row in enumerate(rows):
        for j, v in enumerate(row):
            if len(v) != A.rank or any(not 0 <= c < n for c, n in zip(v, A.orders)):
                raise GspecError(p.lineno, eq.col,
                                 f"entry ({i},{j}) = {v} is not a residue tuple of {A}")
    try:
        spec.forms[name.text] = BilinearForm(E, F, A, rows)
    except InputError as exc:
        raise GspecError(p.lineno, eq.col, str(exc)) from None


def _matrix(p):
    p.next(text="[")
    rows = []
    if p.accept("]"):
        return rows
    while True:
        p.next(text="[")
        row = []
        if not p.accept("]"):
            while True:
                row.append(_entry(p))
                if p.accept("]"):
                    break
                p.next(text=",")
        rows.append(row)
        if p.accept("]"):
            return rows
        p.next(text=";")


def _entry(p):
    if p.accept("("):
        vals = []
        if p.accept(")"):
            return ()
        while True:
            vals.append(int(p.next("int").text))
            if p.accept(")"):
                return tuple(vals)
            p.next(text=",")
    return (int(p.next("int").text),)


def _heisenberg(p, spec, name, base):
    p.next(text="=")
    kind = p.next("ident")
    p.next(text="(")
    if kind.text == "H":
        E = _ref(p, spec, "groups", "group")
        p.next(text=",")
        F = _ref(p, spec, "groups", "group")
        p.next(text=",")
        A = _ref(p, spec, "groups", "group")
        p.next(text=",")
        wtok = p.peek()
        w = _ref(p, spec, "forms", "form")
        if (w.E, w.F, w.A) != (E, F, A):
            raise p.error(f"form is declared on {w.E} x {w.F} -> {w.A}, not {E} x {F} -> {A}", wtok)
        p.next(text=")")
        spec.heisenbergs[name.text] = HeisenbergGroup(w)
    elif kind.text == "standard":
        E = _ref(p, spec, "groups", "group")
        p.next(text=",")
        A = _ref(p, spec, "groups", "group")
        p.next(text=")")
        spec.heisenbergs[name.text] = standard_heisenberg(E, A)
    elif kind.text == "mackey_weil":
        E = _ref(p, spec, "groups", "group")
        p.next(text=")")
        spec.heisenbergs[name.text] = mackey_weil(E)
    else:
        raise p.error(f"expected H, standard or mackey_weil, found {kind.text!r}", kind)


def _duality(p, spec, name, base):
    if p.accept(":"):
        K = _ref(p, spec, "groups", "group")
        p.next(text="=")
        p.next(text="form")
        wtok = p.peek()
        w = _ref(p, spec, "forms", "form")
        if w.E != K or w.F != K:
            raise p.error(f"form is declared on {w.E} x {w.F}, not {K} x {K}", wtok)
        spec.dualities[name.text] = SelfDuality.from_form(w)
        return
    p.next(text="=")
    p.next(text="standard")
    p.next(text="(")
    A = _ref(p, spec, "groups", "group")
    p.next(text=")")
    spec.dualities[name.text] = standard_self_duality(A)


def _table(p, spec, name, base):
    p.next(text="=")
    p.next(text="file")
    tok = p.next("string")
    path = base / tok.text[1:-1]
    try:
        text = path.read_text()
    except OSError as exc:
        raise p.error(f"cannot read {path}: {exc.strerror}", tok) from None
    try:
        spec.tables[name.text] = parse_table(text)
    except InputError as exc:
        raise p.error(f"{path}: {exc}", tok) from None
