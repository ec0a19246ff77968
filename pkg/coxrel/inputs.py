"""
Input documents

Three forms are accepted: a labelled order table (matrix form), a simple
graph (graph form, read as a right-angled system) and a named family such as
"chain4:7" or "Ct:2". JSON and the line-based TXT format carry the first two.
"""

import json
import logging
import re
from enum import Enum
from typing import List, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic import ValidationError as PydanticValidationError

from .catalog import affine_name, catalog_matrix, chain4, type_i2
from .diagram import INFINITY, CoxeterMatrix, Label, new_coxeter_matrix
from .errors import ParseError
from .racg import SimpleGraph, from_graph

logger = logging.getLogger("coxrel.inputs")

INFINITY_TOKENS = {"inf", "infinity", "∞"}

LabelToken = Union[int, str]


class InputForm(Enum):
    MATRIX = "matrix"
    GRAPH = "graph"
    FAMILY = "family"


class InputDocument(BaseModel):
    """One parsed input; exactly one of the three forms is populated"""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    names: Optional[List[str]] = Field(default=None, alias="generators")
    labels: Optional[List[List[LabelToken]]] = Field(default=None, alias="matrix")
    vertices: Optional[List[str]] = None
    edges: Optional[List[Tuple[str, str]]] = None
    family: Optional[str] = None
    n: Optional[int] = None

    @model_validator(mode="after")
    def _one_form(self) -> "InputDocument":
        present = [
            form for form, populated in (
                (InputForm.MATRIX, self.labels is not None),
                (InputForm.GRAPH, self.vertices is not None or self.edges is not None),
                (InputForm.FAMILY, self.family is not None),
            ) if populated
        ]
        if len(present) != 1:
            raise ValueError("exactly one of matrix, graph or family form must be given")
        return self

    @property
    def form(self) -> InputForm:
        if self.labels is not None:
            return InputForm.MATRIX
        if self.family is not None:
            return InputForm.FAMILY
        return InputForm.GRAPH

    def to_graph(self) -> Optional[SimpleGraph]:
        """The graph behind a graph-form or racg-cycle document, else None"""
        if self.form is InputForm.FAMILY and self.family == "racg-cycle":
            return racg_cycle(self.n or 0)
        if self.form is not InputForm.GRAPH:
            return None
        vertices = list(self.vertices or [])
        position = {name: i for i, name in enumerate(vertices)}
        edges = []
        for a, b in self.edges or []:
            if a not in position or b not in position:
                raise ParseError(f"Edge ({a}, {b}) uses an undeclared vertex")
            edges.append((position[a], position[b]))
        return SimpleGraph.from_edge_list(len(vertices), edges, vertices)

    def to_matrix(self) -> CoxeterMatrix:
        graph = self.to_graph()
        if graph is not None:
            return from_graph(graph)
        if self.form is InputForm.FAMILY:
            return build_family(self.family, self.n)
        labels = self.labels or []
        n = len(labels)
        for r, row in enumerate(labels):
            if len(row) != n:
                raise ParseError(f"matrix row {r + 1} has {len(row)} entries, expected {n}")
        table = [[label_value(token) for token in row] for row in labels]
        return new_coxeter_matrix(n, table, self.names)


def label_value(token: LabelToken) -> Label:
    """Map a label token to an order: 0 and 'inf' mean infinity"""
    if isinstance(token, str):
        text = token.strip().lower()
        if text in INFINITY_TOKENS:
            return INFINITY
        if not re.fullmatch(r"\d+", text):
            raise ParseError(f"Invalid label {token!r}")
        token = int(text)
    return INFINITY if token == 0 else token


# ============================================================================
# Named families
# ============================================================================

_FAMILY_PATTERN = re.compile(r"^(chain4|racg-cycle|I2|[A-H]t?):?(\d+|inf)$")


def racg_cycle(n: int) -> SimpleGraph:
    if n < 3:
        raise ParseError(f"racg-cycle needs at least 3 vertices, got {n}")
    return SimpleGraph.cycle(n)


def build_family(family: Optional[str], n: Optional[int]) -> CoxeterMatrix:
    if family is None or n is None:
        raise ParseError("A named family needs both a family and a parameter")
    if family == "chain4":
        return chain4(n)
    if family == "racg-cycle":
        return from_graph(racg_cycle(n))
    if family == "I2":
        return type_i2(INFINITY if n == 0 else n)
    if family.endswith("t"):
        return catalog_matrix(affine_name(family[0], n))
    return catalog_matrix(f"{family}{n}")


def parse_family(text: str) -> InputDocument:
    """'chain4:7', 'A5', 'I2:8', 'At1', 'Ct:3', 'Et6', 'racg-cycle:5', ..."""
    found = _FAMILY_PATTERN.match(text.strip())
    if not found:
        raise ParseError(f"Unknown named family: {text.strip()!r}")
    family, parameter = found.group(1), found.group(2)
    n = 0 if parameter == "inf" else int(parameter)
    if parameter == "inf" and family != "I2":
        raise ParseError(f"Only I2 accepts an infinite parameter: {text.strip()!r}")
    return InputDocument(family=family, n=n)


# ============================================================================
# Parsers
# ============================================================================

def _parse_json(text: str) -> InputDocument:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    if not isinstance(payload, dict):
        raise ParseError("JSON input must be an object")
    if set(payload) == {"family"} and isinstance(payload["family"], str):
        return parse_family(payload["family"])
    try:
        document = InputDocument.model_validate(payload)
    except PydanticValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise ParseError(f"{location}: {first['msg']}" if location else first["msg"]) from None
    if document.labels is not None:
        n = len(document.labels)
        for r, row in enumerate(document.labels):
            if len(row) != n:
                raise ParseError(f"matrix row {r + 1} has {len(row)} entries, expected {n}")
    return document


def _parse_txt(text: str) -> InputDocument:
    n: Optional[int] = None
    pairs = {}
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        tokens = [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]
        if n is None:
            if len(tokens) != 1 or not tokens[0][0].isdigit():
                raise ParseError("first line must hold the generator count", line_number, 1)
            n = int(tokens[0][0])
            if n < 1:
                raise ParseError("generator count must be positive", line_number, tokens[0][1])
            continue
        if len(tokens) != 3:
            column = tokens[3][1] if len(tokens) > 3 else len(line.rstrip()) + 1
            raise ParseError("expected 'i j m'", line_number, column)
        indices = []
        for token, column in tokens[:2]:
            if not token.isdigit() or not 1 <= int(token) <= n:
                raise ParseError(f"generator index must be in 1..{n}, got {token!r}", line_number, column)
            indices.append(int(token) - 1)
        i, j = indices
        if i == j:
            raise ParseError("diagonal entries are fixed to 1", line_number, tokens[1][1])
        token, column = tokens[2]
        try:
            value = label_value(token)
        except ParseError:
            raise ParseError(f"invalid label {token!r}", line_number, column) from None
        key = (min(i, j), max(i, j))
        if key in pairs and pairs[key] != value:
            raise ParseError(f"pair {i + 1} {j + 1} listed with two labels", line_number, 1)
        pairs[key] = value
    if n is None:
        raise ParseError("empty input", 1, 1)

    labels: List[List[LabelToken]] = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
    for (i, j), value in pairs.items():
        token = "inf" if value == INFINITY else value
        labels[i][j] = labels[j][i] = token
    return InputDocument(labels=labels)


def parse_input(text: Union[bytes, str], format: str = "json") -> InputDocument:
    """
    Parse an input document

    Args:
        text: Raw input, UTF-8 when given as bytes
        format: 'json', 'txt' or 'family'

    Raises:
        ParseError: malformed input, with line and column where known
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"input is not UTF-8: {e.reason}") from None
    parsers = {"json": _parse_json, "txt": _parse_txt, "family": parse_family}
    if format not in parsers:
        raise ParseError(f"Unknown input format: {format!r}")
    document = parsers[format](text)
    logger.debug(f"Parsed {format} input as {document.form.value} form")
    return document


def render_txt(matrix: CoxeterMatrix) -> str:
    """Write a matrix in the TXT input format (1-based, 0 for infinity)"""
    lines = [str(matrix.n)]
    for i in range(matrix.n):
        for j in range(i + 1, matrix.n):
            m = matrix.label(i, j)
            if m != 2:
                lines.append(f"{i + 1} {j + 1} {0 if m == INFINITY else m}")
    return "\n".join(lines) + "\n"
