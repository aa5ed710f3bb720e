"""Reading and writing disorder specifications.

Two formats are supported.

*DSL* mirrors the bracket notation generators are usually written in::

    PDD = [
      [{depressed_mood}],                       # A
      [{poor_appetite, overeating}, {fatigue, low_energy}, {hopelessness}, 2],  # B
    ]

Sets are braces, lists are brackets, G4 requirement triples are parentheses,
and ``#`` starts a comment.  A short comment right after a criterion on the
same line becomes its label.  The generator variant is inferred from the
element kinds: ``[S]`` G0, ``[S, k]`` G1, ``[S1, ..., Sm, k]`` G2,
``[L1, L2]`` G3 and ``[L1, L2, (r, s, t)]`` G4.  ``{}`` (or ``∅``) is the
empty-set sentinel allowed inside a G3 second list.

*Canonical* files are YAML with explicit variant tags::

    name: PDD
    criteria:
      - label: A
        gen: G0
        set: [depressed_mood]
      - gen: G4
        list1: [[a, b], [c]]
        list2: [[d], [e, f]]
        req: [1, 0, 3]

Symptom and disorder names use letters, digits and underscores only, so
neither format (nor the CSV export) ever needs quoting.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import yaml

from .errors import InvalidGenerator, ProfileGenError
from .generators import G0, G1, G2, G3, G4, DisorderSpec, check_degenerate

NAME_RE = re.compile(r"^[A-Za-z0-9_]+$")


@dataclass(frozen=True)
class Diagnostic:
    line: int
    column: int
    code: str
    message: str

    def __str__(self):
        return f"{self.line}:{self.column}: {self.code}: {self.message}"


@dataclass
class ParseDiagnostics:
    errors: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def error(self, line, col, code, message):
        self.errors.append(Diagnostic(line, col, code, message))

    def warn(self, line, col, code, message):
        self.warnings.append(Diagnostic(line, col, code, message))

    @property
    def ok(self) -> bool:
        return not self.errors

    def lines(self, source=""):
        prefix = f"{source}:" if source else ""
        out = [f"{prefix}{d} (error)" for d in self.errors]
        out += [f"{prefix}{d} (warning)" for d in self.warnings]
        return out


class ParseError(ProfileGenError, ValueError):
    def __init__(self, diagnostics: ParseDiagnostics):
        self.diagnostics = diagnostics
        super().__init__("; ".join(str(d) for d in diagnostics.errors))


class AmbiguousVariant(ParseError):
    """A bracketed criterion matches none of the generator shapes."""


def _raise(diags):
    if diags.errors and diags.errors[0].code == "AmbiguousVariant":
        raise AmbiguousVariant(diags)
    raise ParseError(diags)


# ---------------------------------------------------------------------------
# shared validation


def _build(kind, parts, line, col, diags):
    try:
        if kind == "G0":
            return G0(parts["set"])
        if kind == "G1":
            return G1(parts["set"], parts["k"])
        if kind == "G2":
            return G2(parts["sets"], parts["k"])
        if kind == "G3":
            return G3(parts["list1"], parts["list2"])
        return G4(parts["list1"], parts["list2"], parts["req"])
    except InvalidGenerator as exc:
        msg = str(exc)
        if exc.constraint:
            msg += f" (violates {exc.constraint})"
        diags.error(line, col, "InvalidGenerator", msg)
    except (TypeError, ValueError) as exc:
        diags.error(line, col, "InvalidGenerator", str(exc))
    return None


def _finish(name, criteria, labels, order, positions, diags):
    if not NAME_RE.match(name or ""):
        diags.error(1, 1, "BadName", f"disorder name {name!r} must match [A-Za-z0-9_]+")
    if not criteria and not diags.errors:
        diags.error(1, 1, "NoCriteria", "a disorder needs at least one criterion")
    if diags.errors:
        _raise(diags)
    for g, (line, col) in zip(criteria, positions):
        for msg in check_degenerate(g):
            diags.warn(line, col, "Degenerate", msg)
    spec = DisorderSpec(name, tuple(criteria), tuple(labels), tuple(order))
    if not spec.disjoint_criteria:
        diags.warn(1, 1, "OverlappingCriteria",
                   "criteria share symptoms; counts need enumeration with dedup")
    return spec


def _check_name(name, line, col, diags):
    if not NAME_RE.match(name):
        diags.error(line, col, "BadName", f"symptom name {name!r} must match [A-Za-z0-9_]+")


# ---------------------------------------------------------------------------
# DSL


_TOKEN_RE = re.compile(
    r"""
    (?P<comment>\#[^\n]*)
  | (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<num>\d+(?![A-Za-z_]))
  | (?P<name>'[^'\n]*'|"[^"\n]*"|[A-Za-z0-9_]+)
  | (?P<empty>∅)
  | (?P<punct>[\[\]{}(),=])
    """,
    re.VERBOSE,
)

_LABEL_RE = re.compile(r"^[A-Za-z0-9_+\-]{1,16}$")


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text, diags):
    toks, pos, line, line_start = [], 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            diags.error(line, pos - line_start + 1, "Syntax",
                        f"unexpected character {text[pos]!r}")
            return None
        kind = m.lastgroup
        if kind == "nl":
            line, line_start = line + 1, m.end()
        elif kind != "ws":
            toks.append(_Tok(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    return toks


class _Parser:
    def __init__(self, toks, diags):
        self.toks = [t for t in toks if t.kind != "comment"]
        self.comments = {t.line: t for t in toks if t.kind == "comment"}
        self.i = 0
        self.diags = diags
        self.order = {}

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def fail(self, tok, message):
        if tok is None:
            last = self.toks[-1] if self.toks else _Tok("", "", 1, 1)
            self.diags.error(last.line, last.col, "Syntax", message + " (at end of input)")
        else:
            self.diags.error(tok.line, tok.col, "Syntax", message)
        raise _Stop

    def expect(self, text):
        tok = self.peek()
        if tok is None or tok.text != text:
            self.fail(tok, f"expected {text!r}, found {tok.text if tok else 'end'!r}")
        self.i += 1
        return tok

    def value(self):
        """Parse one value; returns (kind, payload, token)."""
        tok = self.peek()
        if tok is None:
            self.fail(tok, "expected a value")
        if tok.kind == "num":
            self.i += 1
            return "int", int(tok.text), tok
        if tok.kind == "empty":
            self.i += 1
            return "set", frozenset(), tok
        if tok.text == "{":
            return "set", self.braced(), tok
        if tok.text == "(":
            return "tuple", self.seq("(", ")", self.number), tok
        if tok.text == "[":
            return "list", self.seq("[", "]", self.value), tok
        self.fail(tok, f"unexpected {tok.text!r}")

    def number(self):
        tok = self.peek()
        if tok is None or tok.kind != "num":
            self.fail(tok, "expected a count")
        self.i += 1
        return int(tok.text)

    def symptom(self):
        tok = self.peek()
        if tok is None or tok.kind not in ("name", "num"):
            self.fail(tok, "expected a symptom name")
        self.i += 1
        name = tok.text.strip("'\"")
        _check_name(name, tok.line, tok.col, self.diags)
        self.order.setdefault(name, None)
        return name

    def braced(self):
        names = self.seq("{", "}", self.symptom)
        return frozenset(names)

    def seq(self, open_, close, item):
        self.expect(open_)
        out = []
        while True:
            tok = self.peek()
            if tok is not None and tok.text == close:
                self.i += 1
                return out
            out.append(item())
            tok = self.peek()
            if tok is not None and tok.text == ",":
                self.i += 1
            elif tok is None or tok.text != close:
                self.fail(tok, f"expected ',' or {close!r}")


class _Stop(Exception):
    pass


def _shape(items, tok, diags):
    """Infer the generator variant from the kinds of a bracket's elements."""
    kinds = [k for k, _, _ in items]
    vals = [v for _, v, _ in items]
    at = (tok.line, tok.col)

    def sets_of(lst):
        return all(k == "set" for k, _, _ in lst)

    if kinds == ["set"]:
        return _build("G0", {"set": vals[0]}, *at, diags)
    if kinds == ["set", "int"]:
        return _build("G1", {"set": vals[0], "k": vals[1]}, *at, diags)
    if len(kinds) >= 3 and kinds[-1] == "int" and all(k == "set" for k in kinds[:-1]):
        return _build("G2", {"sets": vals[:-1], "k": vals[-1]}, *at, diags)
    if kinds[:2] == ["list", "list"] and sets_of(vals[0]) and sets_of(vals[1]):
        l1 = [v for _, v, _ in vals[0]]
        l2 = [v for _, v, _ in vals[1]]
        if len(kinds) == 2:
            return _build("G3", {"list1": l1, "list2": l2}, *at, diags)
        if kinds[2:] == ["tuple"]:
            if len(vals[2]) != 3:
                diags.error(*at, "InvalidGenerator", "G4 requirement must be a triple (r,s,t)")
                return None
            return _build("G4", {"list1": l1, "list2": l2, "req": vals[2]}, *at, diags)
    diags.error(*at, "AmbiguousVariant",
                "bracket shape matches no generator template "
                "([S], [S,k], [S1..Sm,k], [L1,L2], [L1,L2,(r,s,t)])")
    return None


def _label_after(parser, end_line):
    tok = parser.comments.get(end_line)
    if tok is None:
        return None
    text = tok.text.lstrip("#").strip()
    return text if _LABEL_RE.match(text) else None


def parse_dsl(text: str, name: str = None):
    """Parse a disorder written in bracket notation.

    Returns ``(spec, diagnostics)``; raises :class:`ParseError` on any error.
    """
    diags = ParseDiagnostics()
    toks = _tokenize(text, diags)
    if toks is None:
        _raise(diags)
    p = _Parser(toks, diags)
    criteria, labels, positions = [], [], []
    try:
        first = p.peek()
        if first is not None and first.kind == "name" and p.toks[1:2] and p.toks[1].text == "=":
            name = first.text.strip("'\"")
            p.i += 2
        p.expect("[")
        while True:
            tok = p.peek()
            if tok is not None and tok.text == "]":
                p.i += 1
                break
            if tok is None or tok.text != "[":
                p.fail(tok, "each criterion must be a bracketed generator")
            kind, items, start = p.value()
            end_line = p.toks[p.i - 1].line
            g = _shape(items, start, diags)
            nxt = p.peek()
            if nxt is not None and nxt.text == ",":
                p.i += 1
            elif nxt is None or nxt.text != "]":
                p.fail(nxt, "expected ',' or ']' after criterion")
            criteria.append(g)
            labels.append(_label_after(p, end_line))
            positions.append((start.line, start.col))
        if p.peek() is not None:
            p.fail(p.peek(), "trailing input after the criteria list")
    except _Stop:
        _raise(diags)
    if name is None:
        name = "disorder"
    return _finish(name, criteria, labels, p.order, positions, diags), diags


def parse_generator(text: str):
    """Parse a single generator such as ``[{a,b,c}, 2]``."""
    diags = ParseDiagnostics()
    toks = _tokenize(text, diags)
    if toks is None:
        _raise(diags)
    p = _Parser(toks, diags)
    try:
        tok = p.peek()
        if tok is None or tok.text != "[":
            p.fail(tok, "a generator starts with '['")
        _, items, start = p.value()
        if p.peek() is not None:
            p.fail(p.peek(), "trailing input after the generator")
    except _Stop:
        _raise(diags)
    g = _shape(items, start, diags)
    if diags.errors:
        _raise(diags)
    for msg in check_degenerate(g):
        diags.warn(start.line, start.col, "Degenerate", msg)
    return g, diags


# ---------------------------------------------------------------------------
# canonical (YAML)

_FIELDS = {
    "G0": ("set",),
    "G1": ("set", "k"),
    "G2": ("sets", "k"),
    "G3": ("list1", "list2"),
    "G4": ("list1", "list2", "req"),
}


class _Bad(Exception):
    def __init__(self, node, message):
        self.node, self.message = node, message


def _pos(node):
    return node.start_mark.line + 1, node.start_mark.column + 1


def _scalar(node, what):
    if not isinstance(node, yaml.ScalarNode):
        raise _Bad(node, f"{what} must be a scalar")
    return node.value


def _count(node, what):
    text = _scalar(node, what)
    if not text.isdigit():
        raise _Bad(node, f"{what} must be a non-negative integer, got {text!r}")
    return int(text)


def _names(node, order, diags, what):
    if not isinstance(node, yaml.SequenceNode):
        raise _Bad(node, f"{what} must be a list of symptom names")
    out = []
    for item in node.value:
        name = _scalar(item, "symptom name")
        _check_name(name, *_pos(item), diags)
        order.setdefault(name, None)
        out.append(name)
    return frozenset(out)


def _set_list(node, order, diags, what):
    if not isinstance(node, yaml.SequenceNode):
        raise _Bad(node, f"{what} must be a list of sets")
    return [_names(item, order, diags, what) for item in node.value]


def parse_canonical(text: str):
    """Parse a canonical YAML disorder file.

    Returns ``(spec, diagnostics)``; raises :class:`ParseError` on any error.
    """
    diags = ParseDiagnostics()
    try:
        root = yaml.compose(text, Loader=yaml.BaseLoader)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        line, col = (mark.line + 1, mark.column + 1) if mark else (1, 1)
        diags.error(line, col, "Syntax", str(getattr(exc, "problem", exc)))
        _raise(diags)
    order, criteria, labels, positions = {}, [], [], []
    name = None
    try:
        if not isinstance(root, yaml.MappingNode):
            raise _Bad(root, "top level must be a mapping with 'name' and 'criteria'")
        top = {_scalar(k, "key"): v for k, v in root.value}
        unknown = set(top) - {"name", "criteria"}
        if unknown:
            raise _Bad(root, f"unknown top-level fields {sorted(unknown)}")
        if "name" not in top or "criteria" not in top:
            raise _Bad(root, "missing 'name' or 'criteria'")
        name = _scalar(top["name"], "name")
        crit_node = top["criteria"]
        if not isinstance(crit_node, yaml.SequenceNode):
            raise _Bad(crit_node, "'criteria' must be a list")
        for cnode in crit_node.value:
            if not isinstance(cnode, yaml.MappingNode):
                raise _Bad(cnode, "each criterion must be a mapping")
            fields = {_scalar(k, "key"): v for k, v in cnode.value}
            kind = _scalar(fields["gen"], "gen") if "gen" in fields else None
            if kind not in _FIELDS:
                raise _Bad(cnode, f"criterion needs 'gen' in G0..G4, got {kind!r}")
            expected = set(_FIELDS[kind]) | {"gen", "label"}
            extra = set(fields) - expected
            missing = set(_FIELDS[kind]) - set(fields)
            if extra or missing:
                raise _Bad(cnode, f"{kind} fields must be {list(_FIELDS[kind])}; "
                                  f"missing {sorted(missing)}, unexpected {sorted(extra)}")
            parts = {}
            for key in _FIELDS[kind]:
                node = fields[key]
                if key == "set":
                    parts[key] = _names(node, order, diags, key)
                elif key in ("sets", "list1", "list2"):
                    parts[key] = _set_list(node, order, diags, key)
                elif key == "k":
                    parts[key] = _count(node, "k")
                else:
                    if not isinstance(node, yaml.SequenceNode) or len(node.value) != 3:
                        raise _Bad(node, "req must be a list of three counts [r, s, t]")
                    parts[key] = tuple(_count(n, "req") for n in node.value)
            line, col = _pos(cnode)
            criteria.append(_build(kind, parts, line, col, diags))
            labels.append(_scalar(fields["label"], "label") if "label" in fields else None)
            positions.append((line, col))
    except _Bad as bad:
        diags.error(*_pos(bad.node), "Syntax", bad.message)
        _raise(diags)
    return _finish(name, criteria, labels, order, positions, diags), diags


# ---------------------------------------------------------------------------
# serialization


def _fmt_set(s, open_="{", close="}"):
    return open_ + ", ".join(sorted(s)) + close


def format_generator(g) -> str:
    """Bracket notation for one generator, sets sorted."""
    if isinstance(g, G0):
        return f"[{_fmt_set(g.set)}]"
    if isinstance(g, G1):
        return f"[{_fmt_set(g.set)}, {g.k}]"
    if isinstance(g, G2):
        return "[" + ", ".join(_fmt_set(s) for s in g.sets) + f", {g.k}]"
    l1 = "[" + ", ".join(_fmt_set(s) for s in g.list1) + "]"
    l2 = "[" + ", ".join(_fmt_set(s) for s in g.list2) + "]"
    if isinstance(g, G3):
        return f"[{l1}, {l2}]"
    r, s, t = g.req
    return f"[{l1}, {l2}, ({r}, {s}, {t})]"


def _serialize_dsl(d):
    lines = [f"{d.name} = ["]
    for g, label in zip(d.criteria, d.labels):
        line = f"  {format_generator(g)},"
        if label:
            line += f"  # {label}"
        lines.append(line)
    lines.append("]")
    return "\n".join(lines) + "\n"


def _serialize_canonical(d):
    lines = [f"name: {d.name}", "criteria:"]
    for g, label in zip(d.criteria, d.labels):
        head = "  - "
        if label:
            lines.append(f"{head}label: {label}")
            head = "    "
        lines.append(f"{head}gen: {g.kind}")
        if isinstance(g, (G0, G1)):
            lines.append(f"    set: {_fmt_set(g.set, '[', ']')}")
        if isinstance(g, G2):
            lines.append("    sets: [" + ", ".join(_fmt_set(s, "[", "]") for s in g.sets) + "]")
        if isinstance(g, (G1, G2)):
            lines.append(f"    k: {g.k}")
        if isinstance(g, (G3, G4)):
            lines.append("    list1: [" + ", ".join(_fmt_set(s, "[", "]") for s in g.list1) + "]")
            lines.append("    list2: [" + ", ".join(_fmt_set(s, "[", "]") for s in g.list2) + "]")
        if isinstance(g, G4):
            lines.append("    req: [{}, {}, {}]".format(*g.req))
    return "\n".join(lines) + "\n"


def serialize(d: DisorderSpec, format: str = "dsl") -> str:
    if format == "dsl":
        return _serialize_dsl(d)
    if format == "canonical":
        return _serialize_canonical(d)
    raise ValueError(f"unknown format {format!r}")


def parse(text: str, format: str = "dsl", name: str = None):
    if format == "dsl":
        return parse_dsl(text, name)
    if format == "canonical":
        return parse_canonical(text)
    raise ValueError(f"unknown format {format!r}")


def detect_format(path) -> str:
    return "canonical" if str(path).endswith((".yaml", ".yml")) else "dsl"


def load(path):
    """Parse a disorder file, choosing the format from its extension."""
    from pathlib import Path

    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return parse(text, detect_format(path), name=path.stem)


def normalize_g0(d: DisorderSpec) -> DisorderSpec:
    """Rewrite every G0 as the equivalent ``G1[S, |S|]``; never applied implicitly."""
    crit = tuple(G1(g.set, len(g.set)) if isinstance(g, G0) else g for g in d.criteria)
    return DisorderSpec(d.name, crit, d.labels, d.symptom_order)

