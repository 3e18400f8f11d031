"""Task graph model and file formats.

A task graph is a DAG of tasks with non-negative integer computation costs
and non-negative integer communication costs on edges.  A communication cost
is paid only when the two endpoint tasks run on different processors.

Two on-disk formats are supported:

* STG: the plain-text layout of the Standard Task Graph Set.  The first
  non-comment line is a node count, then one line per task::

      task-id  cost  num-preds  pred-id ...

  ``#`` starts a comment line and blank lines are ignored.  Published files
  declare the count excluding their two zero-cost dummy nodes (entry and
  exit), so a file with either ``count`` or ``count + 2`` task lines is
  accepted.  Dummy nodes are kept as ordinary tasks.  STG carries no
  communication costs; parsed edges get comm 0.

* native: a JSON object ``{"tasks": [{"id", "cost"}, ...],
  "edges": [{"from", "to", "comm"}, ...]}``.  Unknown keys are ignored so
  generated files may carry a ``meta`` block.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from heapq import heappop, heappush

import numpy as np

from .rng import Xoshiro256StarStar


class GraphError(ValueError):
    """Invalid task graph or task graph document."""


class GraphParseError(GraphError):
    """Malformed graph document; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class MalformedLineError(GraphParseError):
    pass


class DanglingPredecessorError(GraphParseError):
    pass


class DuplicateTaskError(GraphParseError):
    pass


class CycleError(GraphError):
    """The precedence relation contains a cycle."""


class NegativeCostError(GraphError):
    """A computation or communication cost is negative."""


@dataclass(frozen=True)
class KernelArrays:
    """CSR-style views of a graph, shared by every decode call."""

    costs: np.ndarray      # int64[k]
    pred_ptr: np.ndarray   # int64[k + 1]
    pred_src: np.ndarray   # int64[num_edges], predecessor ids
    pred_comm: np.ndarray  # int64[num_edges], comm cost of that edge
    succ_ptr: np.ndarray   # int64[k + 1]
    succ_dst: np.ndarray   # int64[num_edges], successor ids


@dataclass(frozen=True)
class TaskGraph:
    """Immutable DAG of tasks.

    ``costs[i]`` is the computation cost of task ``i``; task ids are exactly
    ``0 .. task_count - 1``.  ``edges`` holds ``(pred, succ, comm)`` triples
    and is kept sorted ascending by ``(pred, succ)`` so that edge iteration
    order (and everything derived from it, such as comm-cost augmentation)
    is canonical.
    """

    costs: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        costs = tuple(int(c) for c in self.costs)
        edges = tuple(sorted((int(u), int(v), int(c)) for u, v, c in self.edges))
        object.__setattr__(self, "costs", costs)
        object.__setattr__(self, "edges", edges)
        self._validate()

    def _validate(self):
        k = len(self.costs)
        if k < 1:
            raise GraphError("a task graph needs at least one task")
        for i, c in enumerate(self.costs):
            if c < 0:
                raise NegativeCostError(f"task {i} has negative cost {c}")
        seen = set()
        for u, v, c in self.edges:
            if not (0 <= u < k and 0 <= v < k):
                raise GraphError(f"edge ({u}, {v}) references an unknown task")
            if u == v:
                raise GraphError(f"task {u} depends on itself")
            if c < 0:
                raise NegativeCostError(f"edge ({u}, {v}) has negative comm cost {c}")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        topo_order(self)  # raises CycleError on a cycle

    @property
    def task_count(self) -> int:
        return len(self.costs)

    @cached_property
    def predecessors(self) -> tuple[tuple[int, ...], ...]:
        preds: list[list[int]] = [[] for _ in range(self.task_count)]
        for u, v, _ in self.edges:
            preds[v].append(u)
        return tuple(tuple(p) for p in preds)

    @cached_property
    def successors(self) -> tuple[tuple[int, ...], ...]:
        succs: list[list[int]] = [[] for _ in range(self.task_count)]
        for u, v, _ in self.edges:
            succs[u].append(v)
        return tuple(tuple(s) for s in succs)

    @cached_property
    def comm(self) -> dict[tuple[int, int], int]:
        return {(u, v): c for u, v, c in self.edges}

    @cached_property
    def kernel_arrays(self) -> KernelArrays:
        k = self.task_count
        pred_ptr = np.zeros(k + 1, dtype=np.int64)
        succ_ptr = np.zeros(k + 1, dtype=np.int64)
        for u, v, _ in self.edges:
            pred_ptr[v + 1] += 1
            succ_ptr[u + 1] += 1
        np.cumsum(pred_ptr, out=pred_ptr)
        np.cumsum(succ_ptr, out=succ_ptr)
        m = len(self.edges)
        pred_src = np.empty(m, dtype=np.int64)
        pred_comm = np.empty(m, dtype=np.int64)
        succ_dst = np.empty(m, dtype=np.int64)
        pfill = pred_ptr[:-1].copy()
        sfill = succ_ptr[:-1].copy()
        for u, v, c in self.edges:
            pred_src[pfill[v]] = u
            pred_comm[pfill[v]] = c
            pfill[v] += 1
            succ_dst[sfill[u]] = v
            sfill[u] += 1
        return KernelArrays(
            costs=np.asarray(self.costs, dtype=np.int64),
            pred_ptr=pred_ptr,
            pred_src=pred_src,
            pred_comm=pred_comm,
            succ_ptr=succ_ptr,
            succ_dst=succ_dst,
        )


@dataclass(frozen=True)
class CommAugmentSpec:
    """How to overwrite every edge's comm cost with a seeded uniform draw."""

    seed: int
    min_comm: int = 1
    max_comm: int = 20

    def __post_init__(self):
        if self.min_comm < 0:
            raise ValueError("min_comm must be non-negative")
        if self.max_comm < self.min_comm:
            raise ValueError("max_comm must be >= min_comm")


def topo_order(g: TaskGraph) -> list[int]:
    """Topological order of ``g``, ties broken by ascending task id."""
    k = g.task_count
    indegree = [0] * k
    succs: list[list[int]] = [[] for _ in range(k)]
    for u, v, _ in g.edges:
        indegree[v] += 1
        succs[u].append(v)
    heap = [t for t in range(k) if indegree[t] == 0]
    # range() yields ascending ids, which is already a valid heap
    order: list[int] = []
    while heap:
        t = heappop(heap)
        order.append(t)
        for v in succs[t]:
            indegree[v] -= 1
            if indegree[v] == 0:
                heappush(heap, v)
    if len(order) != k:
        stuck = min(t for t in range(k) if indegree[t] > 0)
        raise CycleError(f"precedence cycle involving task {stuck}")
    return order


def augment_comm(g: TaskGraph, spec: CommAugmentSpec) -> TaskGraph:
    """Replace every edge's comm cost with a seeded uniform integer draw.

    Edges are visited in the graph's canonical ascending (pred, succ) order,
    so a given (graph, spec) pair always yields the same instance.
    """
    rng = Xoshiro256StarStar(spec.seed)
    edges = tuple(
        (u, v, rng.randint(spec.min_comm, spec.max_comm)) for u, v, _ in g.edges
    )
    return TaskGraph(costs=g.costs, edges=edges)


def parse_stg(text: str) -> TaskGraph:
    """Parse an STG document.  See the module docstring for the layout."""
    declared: int | None = None
    count_line = 0
    entries: dict[int, tuple[int, list[int]]] = {}
    line_of: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = stripped.split()
        try:
            values = [int(f) for f in fields]
        except ValueError:
            raise MalformedLineError(f"non-integer field in {stripped!r}", lineno)
        if declared is None:
            if len(values) != 1 or values[0] < 1:
                raise MalformedLineError("expected a positive node count", lineno)
            declared = values[0]
            count_line = lineno
            continue
        if len(values) < 3:
            raise MalformedLineError("expected: task-id cost num-preds preds...", lineno)
        task, cost, npred = values[0], values[1], values[2]
        preds = values[3:]
        if len(preds) != npred:
            raise MalformedLineError(
                f"task {task} declares {npred} predecessors, lists {len(preds)}", lineno
            )
        if task < 0 or cost < 0:
            raise MalformedLineError(f"negative task id or cost for task {task}", lineno)
        if task in entries:
            raise DuplicateTaskError(f"task {task} defined twice", lineno)
        entries[task] = (cost, preds)
        line_of[task] = lineno
    if declared is None:
        raise MalformedLineError("empty document: no node count found", 1)
    total = len(entries)
    if total not in (declared, declared + 2):
        raise MalformedLineError(
            f"declared {declared} nodes but found {total} task lines "
            f"(dummy entry/exit may add two)",
            count_line,
        )
    for task in entries:
        if task >= total:
            raise MalformedLineError(
                f"task id {task} out of range for {total} tasks", line_of[task]
            )
    costs = [0] * total
    edges: list[tuple[int, int, int]] = []
    for task in sorted(entries):
        cost, preds = entries[task]
        costs[task] = cost
        seen_preds = set()
        for p in preds:
            if not (0 <= p < total):
                raise DanglingPredecessorError(
                    f"task {task} lists unknown predecessor {p}", line_of[task]
                )
            if p == task:
                raise MalformedLineError(
                    f"task {task} lists itself as a predecessor", line_of[task]
                )
            if p in seen_preds:
                raise MalformedLineError(
                    f"task {task} lists predecessor {p} twice", line_of[task]
                )
            seen_preds.add(p)
            edges.append((p, task, 0))
    try:
        return TaskGraph(costs=tuple(costs), edges=tuple(edges))
    except CycleError as exc:
        raise CycleError(f"{exc} (see line {line_of.get(_cycle_task(exc), '?')})") from None


def _cycle_task(exc: CycleError) -> int:
    # CycleError messages end with the lowest task id on the cycle.
    try:
        return int(str(exc).rsplit(" ", 1)[-1])
    except ValueError:
        return -1


def parse_native(text: str) -> TaskGraph:
    """Parse the native JSON format."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedLineError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict):
        raise GraphParseError("top-level value must be an object")
    tasks = doc.get("tasks")
    if not isinstance(tasks, list) or not tasks:
        raise GraphParseError("'tasks' must be a non-empty list")
    raw_edges = doc.get("edges", [])
    if not isinstance(raw_edges, list):
        raise GraphParseError("'edges' must be a list")

    total = len(tasks)
    costs = [0] * total
    seen = set()
    for item in tasks:
        if not isinstance(item, dict) or "id" not in item or "cost" not in item:
            raise GraphParseError(f"task entry {item!r} needs 'id' and 'cost'")
        tid, cost = item["id"], item["cost"]
        if not isinstance(tid, int) or not isinstance(cost, int):
            raise GraphParseError(f"task entry {item!r} has non-integer fields")
        if cost < 0:
            raise NegativeCostError(f"task {tid} has negative cost {cost}")
        if tid in seen:
            raise DuplicateTaskError(f"task {tid} defined twice")
        if not (0 <= tid < total):
            raise GraphParseError(f"task id {tid} out of range for {total} tasks")
        seen.add(tid)
        costs[tid] = cost

    edges: list[tuple[int, int, int]] = []
    for item in raw_edges:
        if not isinstance(item, dict) or not {"from", "to", "comm"} <= item.keys():
            raise GraphParseError(f"edge entry {item!r} needs 'from', 'to' and 'comm'")
        u, v, c = item["from"], item["to"], item["comm"]
        if not (isinstance(u, int) and isinstance(v, int) and isinstance(c, int)):
            raise GraphParseError(f"edge entry {item!r} has non-integer fields")
        if c < 0:
            raise NegativeCostError(f"edge ({u}, {v}) has negative comm cost {c}")
        if not (0 <= u < total and 0 <= v < total):
            raise DanglingPredecessorError(f"edge ({u}, {v}) references an unknown task")
        edges.append((u, v, c))
    return TaskGraph(costs=tuple(costs), edges=tuple(edges))


def to_native(g: TaskGraph, meta: dict | None = None) -> str:
    """Serialize to the native JSON format (canonical, round-trip stable)."""
    doc: dict = {
        "tasks": [{"id": i, "cost": c} for i, c in enumerate(g.costs)],
        "edges": [{"from": u, "to": v, "comm": c} for u, v, c in g.edges],
    }
    if meta is not None:
        doc["meta"] = meta
    return json.dumps(doc, indent=2) + "\n"


def load_graph(path: str, fmt: str) -> TaskGraph:
    """Read a graph file in the given format ('stg' or 'native')."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "stg":
        return parse_stg(text)
    if fmt == "native":
        return parse_native(text)
    raise ValueError(f"unknown graph format {fmt!r}")
