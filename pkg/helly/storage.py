"""Instance files, JSON sidecars, reports and sweep CSV."""
import csv
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ValidationError

from helly.models.family import ColorClasses, Instance
from helly.models.geometry import ConvexSet, LinearConstraint, Relation
from helly.models.report import Sidecar, SweepRow
from helly.utils.rational import format_literal, format_scalar, parse_scalar
from helly.utils.validation import InstanceParseError, MalformedInputError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

CSV_COLUMNS = [
    "d",
    "n",
    "beta",
    "seed",
    "alpha",
    "beta_observed",
    "lower_bound",
    "lower_bound_hi",
    "upper_bound",
    "upper_bound_hi",
    "exact",
    "verdict",
]

RELATIONS = {relation.value: relation for relation in Relation}


def _parse_constraint(tokens: List[str], dim: int, line: int) -> LinearConstraint:
    if len(tokens) != dim + 2:
        raise InstanceParseError(
            f"expected {dim} coefficients, a relation and a right-hand side, got {len(tokens)} tokens",
            line,
        )
    relation = RELATIONS.get(tokens[dim])
    if relation is None:
        raise InstanceParseError(f"unknown relation {tokens[dim]!r}, expected <= or =", line)
    try:
        coefficients = tuple(parse_scalar(token) for token in tokens[:dim])
        rhs = parse_scalar(tokens[dim + 1])
    except MalformedInputError as exc:
        raise InstanceParseError(str(exc), line) from exc
    return LinearConstraint(coefficients=coefficients, rhs=rhs, relation=relation)


def parse_instance(text: str) -> Instance:
    """
    Parse the text instance format.

    ::

        dim 2
        set a
        1 0 <= 3
        0 1 = 1/2
        set b

    A set without constraint lines is R^d. Optional ``class k`` headers before
    the sets make a colorful instance with classes numbered 0..d in order.
    Comments must take a whole line.

    Raises:
        InstanceParseError: With the offending line number
    """
    dim: Optional[int] = None
    colorful = False
    classes: List[List[Tuple[str, List[LinearConstraint]]]] = []

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        keyword = tokens[0]

        if dim is None:
            if keyword != "dim" or len(tokens) != 2:
                raise InstanceParseError("the first line must be 'dim <d>'", number)
            try:
                dim = int(tokens[1])
            except ValueError as exc:
                raise InstanceParseError(f"invalid dimension {tokens[1]!r}", number) from exc
            if dim < 1:
                raise InstanceParseError(f"dimension must be positive, got {dim}", number)
            continue

        if keyword == "dim":
            raise InstanceParseError("duplicate 'dim' line", number)
        if keyword == "class":
            if len(tokens) != 2 or tokens[1] != str(len(classes)):
                raise InstanceParseError(f"expected 'class {len(classes)}'", number)
            if classes and not colorful:
                raise InstanceParseError("'class' header after sets without a class", number)
            colorful = True
            classes.append([])
        elif keyword == "set":
            if len(tokens) != 2:
                raise InstanceParseError("expected 'set <id>'", number)
            if not classes:
                classes.append([])
            if any(label == tokens[1] for label, _ in classes[-1]):
                raise InstanceParseError(f"duplicate set id {tokens[1]!r}", number)
            classes[-1].append((tokens[1], []))
        else:
            if not classes or not classes[-1]:
                raise InstanceParseError("constraint line before any 'set'", number)
            classes[-1][-1][1].append(_parse_constraint(tokens, dim, number))

    if dim is None:
        raise InstanceParseError("missing 'dim' line")
    if colorful:
        if len(classes) != dim + 1:
            raise InstanceParseError(f"expected {dim + 1} color classes, got {len(classes)}")
        for index, members in enumerate(classes):
            if not members:
                raise InstanceParseError(f"color class {index} has no sets")
    elif not classes:
        classes.append([])

    try:
        return Instance(
            dim=dim,
            classes=tuple(
                tuple(ConvexSet(dim=dim, constraints=tuple(constraints)) for _, constraints in members)
                for members in classes
            ),
            labels=tuple(tuple(label for label, _ in members) for members in classes),
            colorful=colorful,
        )
    except ValidationError as exc:
        raise InstanceParseError(str(exc)) from exc


def serialize_instance(instance: Instance) -> str:
    """Inverse of parse_instance; integers are written without a denominator."""
    lines = [f"dim {instance.dim}"]
    for index, (members, labels) in enumerate(zip(instance.classes, instance.labels)):
        if instance.colorful:
            lines.append(f"class {index}")
        for label, member in zip(labels, members):
            lines.append(f"set {label}")
            for constraint in member.constraints:
                values = [format_literal(a) for a in constraint.coefficients]
                values += [constraint.relation.value, format_literal(constraint.rhs)]
                lines.append(" ".join(values))
    return "\n".join(lines) + "\n"


def instance_from_family(family: Sequence[ConvexSet]) -> Instance:
    """Wrap a monochromatic family, labelling sets 0..n-1."""
    if not family:
        raise MalformedInputError("Cannot store an empty family")
    return Instance(
        dim=family[0].dim,
        classes=(tuple(family),),
        labels=(tuple(str(i) for i in range(len(family))),),
    )


def instance_from_classes(classes: ColorClasses) -> Instance:
    """Wrap color classes, labelling the sets of each class 0..n_i-1."""
    return Instance(
        dim=classes.d,
        classes=classes.classes,
        labels=tuple(tuple(str(i) for i in range(len(members))) for members in classes.classes),
        colorful=True,
    )


def load_instance(path: PathLike) -> Instance:
    """
    Read and parse an instance file; OSError propagates to the caller.

    Raises:
        InstanceParseError: If the file is not UTF-8 or does not parse
    """
    path = Path(path)
    data = path.read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data[: exc.start].count(b"\n") + 1
        raise InstanceParseError(f"invalid UTF-8 byte 0x{data[exc.start]:02x}", line) from exc
    instance = parse_instance(text)
    logger.info("Loaded %s: dim %d, class sizes %s", path, instance.dim, [len(c) for c in instance.classes])
    return instance


def save_instance(instance: Instance, path: PathLike) -> None:
    path = Path(path)
    path.write_text(serialize_instance(instance))
    logger.info("Wrote instance to %s", path)


def sidecar_path(path: PathLike) -> Path:
    """``inst.txt`` -> ``inst.txt.json``."""
    path = Path(path)
    return path.with_name(path.name + ".json")


def save_sidecar(sidecar: Sidecar, instance_path: PathLike) -> Path:
    target = sidecar_path(instance_path)
    target.write_text(sidecar.model_dump_json(indent=2) + "\n")
    return target


def load_sidecar(instance_path: PathLike) -> Optional[Sidecar]:
    """Load the sidecar of an instance file; None if it is missing or unreadable."""
    target = sidecar_path(instance_path)
    if not target.exists():
        return None
    try:
        return Sidecar.model_validate_json(target.read_text(encoding="utf-8"))
    except (ValueError, OSError) as exc:
        # ValidationError and UnicodeDecodeError are both ValueErrors.
        logger.warning("Ignoring sidecar %s: %s", target, exc)
        return None


def dump_json(model: BaseModel) -> str:
    return model.model_dump_json(indent=2)


def save_report(report: BaseModel, path: PathLike) -> None:
    path = Path(path)
    path.write_text(dump_json(report) + "\n")
    logger.info("Wrote report to %s", path)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if hasattr(value, "value"):
        return value.value
    return format_scalar(value)


def write_sweep_csv(rows: Sequence[SweepRow], path: PathLike, invocation: Dict[str, Any]) -> None:
    """
    Write sweep rows with a leading ``# invocation:`` comment line.

    Every numeric cell is an exact rational ``p/q`` (or an integer count).
    """
    path = Path(path)
    with open(path, "w", newline="") as handle:
        handle.write(f"# invocation: {json.dumps(invocation, sort_keys=True)}\n")
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            writer.writerow([_cell(getattr(row, column)) for column in CSV_COLUMNS])
    logger.info("Wrote %d sweep rows to %s", len(rows), path)


def read_sweep_csv(path: PathLike) -> List[Dict[str, str]]:
    """Rows of a sweep CSV as dictionaries, skipping the invocation line."""
    with open(path, newline="") as handle:
        lines = [line for line in handle if not line.startswith("#")]
    return list(csv.DictReader(lines))
