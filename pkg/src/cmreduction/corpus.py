"""JSON-lines curve corpora: parsing, per-entry conformance checks, aggregation."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .cmclass import CMSpec, check_curve
from .errors import CMReductionError, HypothesisNotMet, ParseError
from .localfield import QQ, FieldElement, QuadraticField, get_place
from .tate import KodairaType
from .weierstrass import WeierstrassModel

ENTRY_KEYS = {"label", "field", "place", "ainvs", "cm", "expected", "note"}
REQUIRED_KEYS = {"label", "field", "place", "ainvs", "cm", "expected"}
CM_KEYS = {"field", "order_is_maximal", "defined_over_base"}
EXPECTED_KEYS = {"kodaira", "j", "v_delta_min"}
PLACE_KEYS = {"p", "index"}


def _reject_unknown(obj: dict, allowed: set, where: str, line: int | None):
    if not isinstance(obj, dict):
        raise ParseError(f"{where} must be an object", line)
    for key in obj:
        if key not in allowed:
            raise ParseError(f"unknown key {key!r} in {where}", line)


def parse_field(obj, line=None) -> QuadraticField:
    _reject_unknown(obj, {"type", "D"}, "field", line)
    kind = obj.get("type")
    try:
        if kind == "Q":
            if "D" in obj:
                raise ParseError("field of type Q takes no D", line)
            return QQ
        if kind == "quadratic":
            return QuadraticField(int(obj["D"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad field descriptor {obj}: {exc}", line) from exc
    raise ParseError(f"field type must be 'Q' or 'quadratic', got {kind!r}", line)


def parse_element(obj, field: QuadraticField, line=None) -> FieldElement:
    """{"a":..,"b":..,"c":..} means (a + b sqrt D)/c; a bare integer is allowed."""
    if isinstance(obj, bool):
        raise ParseError(f"bad coefficient {obj!r}", line)
    if isinstance(obj, int):
        return FieldElement(obj, 0, 1, field)
    _reject_unknown(obj, {"a", "b", "c"}, "coefficient", line)
    try:
        a, b, c = int(obj.get("a", 0)), int(obj.get("b", 0)), int(obj.get("c", 1))
        if b and field.D is None:
            raise ValueError("b must be 0 over Q")
        return FieldElement(a, b, c, field)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad coefficient {obj}: {exc}", line) from exc


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    field: QuadraticField
    p: int
    place_index: int
    ainvs: tuple[FieldElement, ...]
    cm: CMSpec
    expected: dict
    note: str = ""
    line: int | None = None

    def model(self) -> WeierstrassModel:
        return WeierstrassModel(self.ainvs, self.field)


def parse_entry(obj, line: int | None = None) -> CorpusEntry:
    _reject_unknown(obj, ENTRY_KEYS, "entry", line)
    missing = REQUIRED_KEYS - obj.keys()
    if missing:
        raise ParseError(f"missing key(s) {sorted(missing)}", line)
    label = obj["label"]
    if not isinstance(label, str):
        raise ParseError("label must be a string", line)
    fld = parse_field(obj["field"], line)

    place = obj["place"]
    _reject_unknown(place, PLACE_KEYS, "place", line)
    try:
        p, index = int(place["p"]), int(place.get("index", 0))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad place {place}", line) from exc

    ainvs = obj["ainvs"]
    if not isinstance(ainvs, list) or len(ainvs) != 5:
        raise ParseError("ainvs must be a list of five coefficients", line)
    coeffs = tuple(parse_element(a, fld, line) for a in ainvs)

    cm = obj["cm"]
    _reject_unknown(cm, CM_KEYS, "cm", line)
    try:
        spec = CMSpec(
            parse_field(cm["field"], line),
            bool(cm.get("order_is_maximal", True)),
            bool(cm.get("defined_over_base", True)),
        )
    except KeyError as exc:
        raise ParseError("cm needs a field", line) from exc
    except CMReductionError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad cm spec: {exc}", line) from exc

    exp = obj["expected"]
    _reject_unknown(exp, EXPECTED_KEYS, "expected", line)
    expected = {}
    if "kodaira" in exp:
        try:
            expected["kodaira"] = str(KodairaType.parse(exp["kodaira"]))
        except (ValueError, AttributeError) as exc:
            raise ParseError(f"bad expected kodaira {exp['kodaira']!r}", line) from exc
    if exp.get("j") is not None:
        expected["j"] = parse_element(exp["j"], fld, line)
    if exp.get("v_delta_min") is not None:
        expected["v_delta_min"] = int(exp["v_delta_min"])
    return CorpusEntry(label, fld, p, index, coeffs, spec, expected, str(obj.get("note", "")), line)


def parse_corpus_text(text: str) -> list[CorpusEntry]:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        raw = raw.strip()
        if not raw or raw.startswith("#"):
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", lineno) from exc
        entries.append(parse_entry(obj, lineno))
    return entries


def load_corpus(path) -> list[CorpusEntry]:
    return parse_corpus_text(Path(path).read_text())


@dataclass
class EntryResult:
    label: str
    status: str  # PASS, FAIL or NOT_COVERED
    report: dict | None = None
    error: str | None = None

    def to_json(self) -> dict:
        out = {"label": self.label, "status": self.status}
        if self.report is not None:
            out["report"] = self.report
        if self.error is not None:
            out["error"] = self.error
        return out


def evaluate_entry(entry: CorpusEntry, max_prime: int | None = None) -> EntryResult:
    try:
        place = get_place(entry.field, entry.p, entry.place_index)
        report = check_curve(entry.model(), place, entry.cm, entry.label, entry.expected, max_prime)
    except HypothesisNotMet as exc:
        return EntryResult(entry.label, "NOT_COVERED", error=str(exc))
    except (CMReductionError, ValueError) as exc:
        return EntryResult(entry.label, "FAIL", error=f"{type(exc).__name__}: {exc}")
    return EntryResult(entry.label, report.verdict, report.to_json())


@dataclass
class CorpusSummary:
    results: list[EntryResult] = field(default_factory=list)

    @property
    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "not_covered": 0}
        key = {"PASS": "pass", "FAIL": "fail", "NOT_COVERED": "not_covered"}
        for r in self.results:
            out[key[r.status]] += 1
        return out

    @property
    def any_fail(self) -> bool:
        return any(r.status == "FAIL" for r in self.results)

    def to_json(self) -> dict:
        return {"summary": self.counts, "entries": [r.to_json() for r in self.results]}


def _evaluate_star(args):
    return evaluate_entry(*args)


def run_entries(entries, parallelism: int = 1, max_prime: int | None = None) -> CorpusSummary:
    jobs = [(e, max_prime) for e in entries]
    if parallelism <= 1 or len(jobs) <= 1:
        return CorpusSummary([_evaluate_star(j) for j in jobs])
    with ProcessPoolExecutor(max_workers=parallelism) as pool:
        # map keeps input order
        return CorpusSummary(list(pool.map(_evaluate_star, jobs)))


def run_corpus(path, parallelism: int = 1, max_prime: int | None = None) -> CorpusSummary:
    """Check every entry of a JSON-lines corpus; ParseError aborts before any work."""
    return run_entries(load_corpus(path), parallelism, max_prime)


def shipped_corpus_path() -> Path:
    return Path(str(resources.files("cmreduction") / "data" / "cm_examples.jsonl"))
