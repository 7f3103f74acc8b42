"""Line-oriented text formats for disingquandles and G-families.

Disingquandle::

    disingquandle <name>
    order <n>
    op1            followed by n rows of n integers (row x, column y: x *1 y)
    op2 / r1 / r2  likewise
    end

G-family::

    gfamily <name>
    group-order <m>
    mult           followed by m rows
    set-order <n>
    op <g>         one n x n block per group element
    end

``#`` starts a comment.  Errors carry the 1-based line number.
"""
from __future__ import annotations

from pathlib import Path

from .tables import DisingquandleTable, GFamily, Group, OperationTable, StructureError


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class _Lines:
    def __init__(self, text: str):
        self.items = []
        for i, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0].strip()
            if body:
                self.items.append((i, body.split()))
        self.pos = 0

    @property
    def last_line(self) -> int:
        return self.items[-1][0] if self.items else 1

    def next(self, expected: str) -> tuple[int, list[str]]:
        if self.pos >= len(self.items):
            raise ParseError(self.last_line, f"unexpected end of input, expected {expected}")
        item = self.items[self.pos]
        self.pos += 1
        return item

    def keyword(self, word: str, nargs: int) -> tuple[int, list[str]]:
        line, toks = self.next(f"'{word}'")
        if toks[0] != word:
            raise ParseError(line, f"expected '{word}', found '{toks[0]}'")
        if len(toks) != nargs + 1:
            raise ParseError(line, f"'{word}' takes {nargs} argument(s), got {len(toks) - 1}")
        return line, toks[1:]

    def integer(self, line: int, tok: str) -> int:
        try:
            return int(tok)
        except ValueError:
            raise ParseError(line, f"expected an integer, found {tok!r}") from None

    def block(self, n: int, what: str) -> OperationTable:
        rows = []
        for _ in range(n):
            line, toks = self.next(f"a row of {what}")
            if len(toks) != n:
                raise ParseError(line, f"row of {what} must have {n} entries, found {len(toks)}")
            row = [self.integer(line, t) for t in toks]
            for v in row:
                if not 0 <= v < n:
                    raise ParseError(line, f"entry {v} of {what} outside 0..{n - 1}")
            rows.append(row)
        return OperationTable(rows)

    def done(self):
        self.keyword("end", 0)
        if self.pos != len(self.items):
            line, toks = self.items[self.pos]
            raise ParseError(line, f"unexpected '{toks[0]}' after 'end'")


def parse_structure(text: str) -> DisingquandleTable:
    lines = _Lines(text)
    _, (name,) = lines.keyword("disingquandle", 1)
    line, (tok,) = lines.keyword("order", 1)
    n = lines.integer(line, tok)
    if n < 1:
        raise ParseError(line, "order must be positive")
    tables = {}
    for part in ("op1", "op2", "r1", "r2"):
        lines.keyword(part, 0)
        tables[part] = lines.block(n, part)
    lines.done()
    return DisingquandleTable(name=name, **tables)


def _rows(table: OperationTable) -> list[str]:
    width = len(str(table.order - 1))
    return [" ".join(str(v).rjust(width) for v in row) for row in table.rows()]


def format_structure(d: DisingquandleTable) -> str:
    out = [f"disingquandle {d.name}", f"order {d.order}"]
    for part in ("op1", "op2", "r1", "r2"):
        out.append(part)
        out += _rows(getattr(d, part))
    out.append("end")
    return "\n".join(out) + "\n"


def parse_gfamily(text: str) -> GFamily:
    lines = _Lines(text)
    _, (name,) = lines.keyword("gfamily", 1)
    line, (tok,) = lines.keyword("group-order", 1)
    m = lines.integer(line, tok)
    mult_line, _ = lines.keyword("mult", 0)
    mult = lines.block(m, "mult")
    try:
        group = Group(mult, name=f"{name}-group")
    except StructureError as exc:
        raise ParseError(mult_line, str(exc)) from None
    line, (tok,) = lines.keyword("set-order", 1)
    n = lines.integer(line, tok)
    ops: dict[int, OperationTable] = {}
    for _ in range(m):
        line, (tok,) = lines.keyword("op", 1)
        g = lines.integer(line, tok)
        if not 0 <= g < m or g in ops:
            raise ParseError(line, f"op index {g} is out of range or repeated")
        ops[g] = lines.block(n, f"op {g}")
    lines.done()
    return GFamily(group, tuple(ops[g] for g in range(m)), name=name)


def format_gfamily(f: GFamily) -> str:
    out = [f"gfamily {f.name}", f"group-order {f.group_order}", "mult"]
    out += _rows(f.group.mult)
    out.append(f"set-order {f.set_order}")
    for g, op in enumerate(f.ops):
        out.append(f"op {g}")
        out += _rows(op)
    out.append("end")
    return "\n".join(out) + "\n"


def load(path: str | Path) -> DisingquandleTable | GFamily:
    """Read either file kind, dispatching on the first keyword."""
    text = Path(path).read_text(encoding="utf-8")
    head = _Lines(text)
    if head.items and head.items[0][1][0] == "gfamily":
        return parse_gfamily(text)
    return parse_structure(text)
