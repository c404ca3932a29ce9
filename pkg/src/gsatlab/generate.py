"""Instance and dataset construction.

Generators (random 3-CNF, random 2-trees, the coloring encoding) take an
explicit random.Random so callers own reproducibility. The dataset builders
below derive one recorded substream per candidate, which is what makes stored
datasets bit-exact to regenerate from their manifest alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterator

from ._parallel import ordered_map
from .cnf import Formula, emit_dimacs, parse_dimacs, with_comments
from .dpll import count_models, decide_sat
from .rng import substream


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices 1..num_vertices.

    Edges are stored in construction order as (low, high) pairs. For graphs
    built by random_2tree, expansions retains the construction trail as
    (new_vertex, anchor_x, anchor_y) triples, one per added vertex.
    """

    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    expansions: tuple[tuple[int, int, int], ...] = ()

    def __post_init__(self):
        if self.num_vertices < 0:
            raise ValueError("num_vertices must be nonnegative")
        normalized = []
        seen = set()
        for edge in self.edges:
            u, v = edge
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u > v:
                u, v = v, u
            if not (1 <= u and v <= self.num_vertices):
                raise ValueError(f"edge {edge} out of range 1..{self.num_vertices}")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge {edge}")
            seen.add((u, v))
            normalized.append((u, v))
        object.__setattr__(self, "edges", tuple(normalized))
        object.__setattr__(self, "expansions", tuple(tuple(e) for e in self.expansions))

    @property
    def num_edges(self) -> int:
        return len(self.edges)


def random_3cnf(num_vars: int, ratio: float, rng) -> Formula:
    """Fixed-length random 3-CNF: round(num_vars * ratio) independent clauses.

    Each clause draws 3 distinct variables uniformly without replacement
    (rejection in draw order), then negates each with probability 1/2.
    Duplicate clauses are allowed. Rounding is half-up, so the clause count
    is exact at ratios like 4.25 and 4.30 on the usual sizes.
    """
    if num_vars < 3:
        raise ValueError(f"need at least 3 variables, got {num_vars}")
    if ratio <= 0:
        raise ValueError(f"ratio must be positive, got {ratio}")
    num_clauses = int(num_vars * ratio + 0.5)
    clauses = []
    for _ in range(num_clauses):
        picked: list[int] = []
        while len(picked) < 3:
            v = rng.randrange(1, num_vars + 1)
            if v not in picked:
                picked.append(v)
        clauses.append(tuple(v if rng.getrandbits(1) else -v for v in picked))
    return Formula(num_vars, clauses)


def random_2tree(num_vertices: int, rng) -> Graph:
    """Random 2-tree: a triangle grown by p-3 random edge expansions.

    Each expansion picks a uniformly random edge {x, y} of the current graph
    (earlier expansion edges included) and attaches a new vertex to both ends.
    The result has exactly 2p-3 edges and the trail of expansions is kept.
    """
    if num_vertices < 3:
        raise ValueError(f"need at least 3 vertices, got {num_vertices}")
    edges: list[tuple[int, int]] = [(1, 2), (1, 3), (2, 3)]
    expansions: list[tuple[int, int, int]] = []
    for z in range(4, num_vertices + 1):
        x, y = edges[rng.randrange(len(edges))]
        edges.append((x, z))
        edges.append((y, z))
        expansions.append((z, x, y))
    return Graph(num_vertices, tuple(edges), tuple(expansions))


def two_tree_coloring_count(num_vertices: int, num_colors: int) -> int:
    """Number of proper colorings of any 2-tree on p vertices with k colors.

    The base triangle admits k(k-1)(k-2) colorings and every expansion vertex
    sees two adjacent (differently colored) neighbors, leaving k-2 choices:
    k(k-1)(k-2)^(p-2) in total. Independent of which edges were expanded.
    """
    if num_vertices < 3:
        raise ValueError(f"a 2-tree has at least 3 vertices, got {num_vertices}")
    if num_colors < 0:
        raise ValueError(f"num_colors must be nonnegative, got {num_colors}")
    k = num_colors
    if k < 2:
        return 0
    return k * (k - 1) * (k - 2) ** (num_vertices - 2)


@dataclass(frozen=True)
class ColoringVarMap:
    """Fixed bijection between color choices and variable indices.

    Variable for "vertex v gets color i" is (v-1)*k + i, covering exactly
    1..p*k, so encodings are byte-stable across runs.
    """

    num_vertices: int
    num_colors: int

    def __post_init__(self):
        if self.num_vertices < 0:
            raise ValueError("num_vertices must be nonnegative")
        if self.num_colors < 1:
            raise ValueError("num_colors must be at least 1")

    @property
    def num_vars(self) -> int:
        return self.num_vertices * self.num_colors

    def var(self, vertex: int, color: int) -> int:
        if not 1 <= vertex <= self.num_vertices:
            raise ValueError(f"vertex {vertex} out of range 1..{self.num_vertices}")
        if not 1 <= color <= self.num_colors:
            raise ValueError(f"color {color} out of range 1..{self.num_colors}")
        return (vertex - 1) * self.num_colors + color

    def vertex_color(self, index: int) -> tuple[int, int]:
        if not 1 <= index <= self.num_vars:
            raise ValueError(f"index {index} out of range 1..{self.num_vars}")
        vertex, color = divmod(index - 1, self.num_colors)
        return vertex + 1, color + 1


def encode_coloring(graph: Graph, num_colors: int) -> tuple[Formula, ColoringVarMap]:
    """CNF whose models are exactly the proper k-colorings of the graph.

    Clause groups, in this order: (1) per edge and color, not both endpoints
    that color; (2) per vertex, at least one color; (3) per vertex and color
    pair i<j, at most one color. Sizes: m*k + p + p*k*(k-1)/2 clauses on p*k
    variables.
    """
    if num_colors < 1:
        raise ValueError(f"num_colors must be at least 1, got {num_colors}")
    vm = ColoringVarMap(graph.num_vertices, num_colors)
    p = graph.num_vertices
    k = num_colors
    clauses: list[tuple[int, ...]] = []
    for x, y in graph.edges:
        for i in range(1, k + 1):
            clauses.append((-vm.var(x, i), -vm.var(y, i)))
    for x in range(1, p + 1):
        clauses.append(tuple(vm.var(x, i) for i in range(1, k + 1)))
    for x in range(1, p + 1):
        for i in range(1, k + 1):
            for j in range(i + 1, k + 1):
                clauses.append((-vm.var(x, i), -vm.var(x, j)))
    formula = Formula(vm.num_vars, clauses)
    assert formula.num_clauses == graph.num_edges * k + p + p * k * (k - 1) // 2
    return formula, vm


def crossover_ratio(num_vars: int) -> float:
    """Clause-to-variable ratio used for crossover-region datasets.

    4.30 around one hundred variables, 4.25 elsewhere: the satisfiability
    threshold for fixed-length 3-CNF sits slightly higher at moderate sizes.
    """
    return 4.30 if 100 <= num_vars < 150 else 4.25


_GRAPH_EXPANSION_PREFIX = "expansion "


def emit_graph(graph: Graph, *comments: str) -> str:
    """Serialize a graph in DIMACS edge format ("p edge", "e u v" lines).

    The 2-tree construction trail, if any, rides along in comment lines so a
    round-trip preserves it.
    """
    lines = [f"c {c}" if c else "c" for c in comments]
    for z, x, y in graph.expansions:
        lines.append(f"c {_GRAPH_EXPANSION_PREFIX}{z} {x} {y}")
    lines.append(f"p edge {graph.num_vertices} {graph.num_edges}")
    for u, v in graph.edges:
        lines.append(f"e {u} {v}")
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Parse DIMACS edge format; inverse of emit_graph."""
    num_vertices = None
    declared_edges = 0
    header_line = 0
    edges: list[tuple[int, int]] = []
    expansions: list[tuple[int, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("c"):
            body = line[1:].strip()
            if body.startswith(_GRAPH_EXPANSION_PREFIX):
                parts = body[len(_GRAPH_EXPANSION_PREFIX):].split()
                if len(parts) == 3 and all(p.isdigit() for p in parts):
                    z, x, y = (int(p) for p in parts)
                    expansions.append((z, x, y))
            continue
        if line.startswith("p"):
            parts = line.split()
            if num_vertices is not None:
                raise ValueError(f"line {lineno}: duplicate header")
            if len(parts) != 4 or parts[1] != "edge":
                raise ValueError(f"line {lineno}: malformed header {line!r}")
            num_vertices = int(parts[2])
            declared_edges = int(parts[3])
            header_line = lineno
            continue
        if line.startswith("e"):
            if num_vertices is None:
                raise ValueError(f"line {lineno}: edge before header")
            parts = line.split()
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: malformed edge {line!r}")
            edges.append((int(parts[1]), int(parts[2])))
            continue
        raise ValueError(f"line {lineno}: unrecognized line {line!r}")
    if num_vertices is None:
        raise ValueError("line 1: missing header")
    if len(edges) != declared_edges:
        raise ValueError(
            f"line {header_line}: header declares {declared_edges} edges, "
            f"found {len(edges)}")
    return Graph(num_vertices, tuple(edges), tuple(expansions))


# ---------------------------------------------------------------------------
# Datasets: filtered instance collections with recorded per-candidate seeds.
# ---------------------------------------------------------------------------

FAMILIES = ("random3cnf", "coloring")
FILTERS = ("satisfiable-only", "count-range", "none")

MANIFEST_NAME = "manifest"
_MANIFEST_FORMAT = "gsatlab-dataset-1"


def solution_count_bucket(k: int) -> tuple[int, int]:
    """Bounds (lo, hi] of solution-count bucket k.

    Bucket k keeps formulas with more than p_{k-1} and at most p_k models,
    where p_0 = 1 and p_k = 2^(k-3) * 100 — so 25, 50, 100, 200, ... for
    k = 1, 2, 3, 4, ...; the k = 1 lower edge extends the doubling rule
    downward.
    """
    if k < 1:
        raise ValueError(f"bucket index must be >= 1, got {k}")

    def edge(i: int) -> int:
        if i == 0:
            return 1
        return (100 >> (3 - i)) if i < 3 else (100 << (i - 3))

    return edge(k - 1), edge(k)


@dataclass(frozen=True)
class DatasetSpec:
    """What to build: family, shape parameters, filter, and master seed.

    random3cnf uses num_vars and ratio; coloring uses num_vertices and
    num_colors (instances are encodings of fresh random 2-trees). The filter
    applies to random3cnf only: satisfiable-only keeps what the complete
    solver certifies, count-range(lo, hi) keeps exact model counts c with
    lo < c <= hi (hi=None means unbounded above).
    """

    family: str
    count: int
    seed: int
    num_vars: int | None = None
    ratio: float | None = None
    num_vertices: int | None = None
    num_colors: int | None = None
    filter: str = "none"
    lo: int | None = None
    hi: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.count < 1:
            raise ValueError(f"count must be >= 1, got {self.count}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError(f"seed must be an unsigned 64-bit value, got {self.seed}")
        if self.filter not in FILTERS:
            raise ValueError(f"unknown filter {self.filter!r}; expected one of {FILTERS}")
        if self.family == "random3cnf":
            if self.num_vars is None or self.num_vars < 3:
                raise ValueError("random3cnf needs num_vars >= 3")
            if self.ratio is None or self.ratio <= 0:
                raise ValueError("random3cnf needs a positive ratio")
            if self.num_vertices is not None or self.num_colors is not None:
                raise ValueError("num_vertices/num_colors do not apply to random3cnf")
        else:
            if self.num_vertices is None or self.num_vertices < 3:
                raise ValueError("coloring needs num_vertices >= 3")
            if self.num_colors is None or self.num_colors < 1:
                raise ValueError("coloring needs num_colors >= 1")
            if self.num_vars is not None or self.ratio is not None:
                raise ValueError("num_vars/ratio do not apply to coloring")
            if self.filter != "none":
                raise ValueError("filters apply to random3cnf only")
        if self.filter == "count-range":
            if self.lo is None or self.lo < 1:
                raise ValueError("count-range needs lo >= 1")
            if self.hi is not None and self.hi <= self.lo:
                raise ValueError("count-range needs hi > lo (or hi=None)")
        elif self.lo is not None or self.hi is not None:
            raise ValueError("lo/hi apply to the count-range filter only")


@dataclass(frozen=True)
class DatasetInstance:
    """One kept instance: its formula plus enough provenance to rebuild it.

    seed is the recorded substream value for candidate_index under the master
    seed; model_count is known for count-range and coloring datasets. When
    count_is_lower_bound, the exact count is >= model_count (counting stopped
    at a cap).
    """

    index: int
    seed: int
    candidate_index: int
    formula: Formula
    model_count: int | None = None
    count_is_lower_bound: bool = False


@dataclass(frozen=True)
class Dataset:
    spec: DatasetSpec
    instances: tuple[DatasetInstance, ...]

    @property
    def certified_satisfiable(self) -> bool:
        """True when every instance is known satisfiable by construction."""
        spec = self.spec
        if spec.family == "coloring":
            return spec.num_colors >= 3
        return spec.filter in ("satisfiable-only", "count-range")

    @property
    def formulas(self) -> tuple[Formula, ...]:
        return tuple(inst.formula for inst in self.instances)

    def describe(self) -> str:
        """One-line identity used in reports."""
        spec = self.spec
        if spec.family == "random3cnf":
            shape = f"num_vars={spec.num_vars} ratio={spec.ratio!r}"
        else:
            shape = f"num_vertices={spec.num_vertices} num_colors={spec.num_colors}"
        bounds = ""
        if spec.filter == "count-range":
            bounds = f" lo={spec.lo} hi={spec.hi}"
        return (f"{spec.family} {shape} count={spec.count} "
                f"filter={spec.filter}{bounds} seed={spec.seed}")


def instance_seed(spec: DatasetSpec, candidate_index: int) -> int:
    """The recorded per-candidate substream value."""
    return substream(spec.seed, candidate_index)


def _build_instance_formula(spec: DatasetSpec, seed: int) -> Formula:
    rng = random.Random(seed)
    if spec.family == "random3cnf":
        return random_3cnf(spec.num_vars, spec.ratio, rng)
    graph = random_2tree(spec.num_vertices, rng)
    return encode_coloring(graph, spec.num_colors)[0]


def _sat_worker(task: tuple[int, float, int]) -> bool:
    num_vars, ratio, seed = task
    formula = random_3cnf(num_vars, ratio, random.Random(seed))
    return decide_sat(formula) is not None


def _count_worker(task: tuple[int, float, int, int]) -> tuple[int, bool]:
    num_vars, ratio, seed, cap = task
    formula = random_3cnf(num_vars, ratio, random.Random(seed))
    result = count_models(formula, cap)
    return result.count, result.capped


ProgressCallback = Callable[[int, int], None]


def build_satisfiable_dataset(spec: DatasetSpec,
                              progress: ProgressCallback | None = None,
                              jobs: int | None = None) -> Dataset:
    """Keep the first `count` candidates the complete solver certifies.

    Candidates are generated one at a time from consecutive recorded
    substreams and tested in candidate order, so membership is a
    deterministic function of the master seed. progress(candidates_tested,
    kept) fires after every candidate.
    """
    if spec.family != "random3cnf" or spec.filter != "satisfiable-only":
        raise ValueError("spec must be random3cnf with the satisfiable-only filter")

    def tasks() -> Iterator[tuple[int, float, int]]:
        candidate = 0
        while True:
            yield (spec.num_vars, spec.ratio, instance_seed(spec, candidate))
            candidate += 1

    instances: list[DatasetInstance] = []
    candidate = 0
    for satisfiable in ordered_map(_sat_worker, tasks(), jobs):
        if satisfiable:
            seed = instance_seed(spec, candidate)
            instances.append(DatasetInstance(
                index=len(instances), seed=seed, candidate_index=candidate,
                formula=_build_instance_formula(spec, seed)))
        candidate += 1
        if progress is not None:
            progress(candidate, len(instances))
        if len(instances) == spec.count:
            break
    return Dataset(spec, tuple(instances))


def build_count_bucketed_dataset(spec: DatasetSpec,
                                 progress: ProgressCallback | None = None,
                                 jobs: int | None = None) -> Dataset:
    """Keep the first `count` candidates whose model count c has lo < c <= hi.

    Counting runs with cap hi+1, so a capped result proves c > hi and the
    candidate is rejected without finishing the count. With hi=None the cap
    is lo+1 and a capped result proves membership; the recorded count is then
    the lower bound lo+1.
    """
    if spec.family != "random3cnf" or spec.filter != "count-range":
        raise ValueError("spec must be random3cnf with the count-range filter")
    cap = spec.hi + 1 if spec.hi is not None else spec.lo + 1

    def tasks() -> Iterator[tuple[int, float, int, int]]:
        candidate = 0
        while True:
            yield (spec.num_vars, spec.ratio, instance_seed(spec, candidate), cap)
            candidate += 1

    instances: list[DatasetInstance] = []
    candidate = 0
    for count, capped in ordered_map(_count_worker, tasks(), jobs):
        if spec.hi is not None:
            keep = not capped and spec.lo < count <= spec.hi
        else:
            keep = count > spec.lo  # capped or not, count > lo proves membership
        if keep:
            seed = instance_seed(spec, candidate)
            instances.append(DatasetInstance(
                index=len(instances), seed=seed, candidate_index=candidate,
                formula=_build_instance_formula(spec, seed),
                model_count=count, count_is_lower_bound=capped))
        candidate += 1
        if progress is not None:
            progress(candidate, len(instances))
        if len(instances) == spec.count:
            break
    return Dataset(spec, tuple(instances))


def build_coloring_dataset(spec: DatasetSpec,
                           progress: ProgressCallback | None = None) -> Dataset:
    """Encode `count` fresh random 2-trees; every candidate is kept.

    Model counts come from the closed form for 2-tree colorings, so these
    datasets are certified satisfiable whenever num_colors >= 3.
    """
    if spec.family != "coloring":
        raise ValueError("spec must have the coloring family")
    models = two_tree_coloring_count(spec.num_vertices, spec.num_colors)
    instances = []
    for candidate in range(spec.count):
        seed = instance_seed(spec, candidate)
        instances.append(DatasetInstance(
            index=candidate, seed=seed, candidate_index=candidate,
            formula=_build_instance_formula(spec, seed), model_count=models))
        if progress is not None:
            progress(candidate + 1, candidate + 1)
    return Dataset(spec, tuple(instances))


def build_dataset(spec: DatasetSpec, progress: ProgressCallback | None = None,
                  jobs: int | None = None) -> Dataset:
    """Dispatch to the right builder for the spec's family and filter."""
    if spec.family == "coloring":
        return build_coloring_dataset(spec, progress)
    if spec.filter == "satisfiable-only":
        return build_satisfiable_dataset(spec, progress, jobs)
    if spec.filter == "count-range":
        return build_count_bucketed_dataset(spec, progress, jobs)
    instances = []
    for candidate in range(spec.count):
        seed = instance_seed(spec, candidate)
        instances.append(DatasetInstance(
            index=candidate, seed=seed, candidate_index=candidate,
            formula=_build_instance_formula(spec, seed)))
        if progress is not None:
            progress(candidate + 1, candidate + 1)
    return Dataset(spec, tuple(instances))


# -- persistence -------------------------------------------------------------


def _spec_manifest_items(spec: DatasetSpec) -> list[tuple[str, str]]:
    items = [("format", _MANIFEST_FORMAT), ("family", spec.family),
             ("count", str(spec.count)), ("seed", str(spec.seed)),
             ("filter", spec.filter)]
    if spec.family == "random3cnf":
        items.append(("num_vars", str(spec.num_vars)))
        items.append(("ratio", repr(spec.ratio)))
    else:
        items.append(("num_vertices", str(spec.num_vertices)))
        items.append(("num_colors", str(spec.num_colors)))
    if spec.filter == "count-range":
        items.append(("lo", str(spec.lo)))
        items.append(("hi", "none" if spec.hi is None else str(spec.hi)))
    return items


def _instance_comments(spec: DatasetSpec, inst: DatasetInstance) -> list[str]:
    if spec.family == "random3cnf":
        generator = f"generator random3cnf num_vars={spec.num_vars} ratio={spec.ratio!r}"
    else:
        generator = (f"generator coloring num_vertices={spec.num_vertices} "
                     f"num_colors={spec.num_colors}")
    comments = [generator, f"seed {inst.seed}", f"candidate {inst.candidate_index}"]
    if inst.model_count is not None:
        bound = ">=" if inst.count_is_lower_bound else ""
        comments.append(f"models {bound}{inst.model_count}")
    return comments


def write_dataset(dataset: Dataset, directory: str | Path) -> Path:
    """Persist a dataset as manifest + one NNNN.cnf file per instance."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    lines = [f"{k}={v}" for k, v in _spec_manifest_items(dataset.spec)]
    lines.append(f"certified_satisfiable={'true' if dataset.certified_satisfiable else 'false'}")
    for inst in dataset.instances:
        prefix = f"instance.{inst.index}"
        lines.append(f"{prefix}.seed={inst.seed}")
        lines.append(f"{prefix}.candidate={inst.candidate_index}")
        if inst.model_count is not None:
            lines.append(f"{prefix}.models={inst.model_count}")
            if inst.count_is_lower_bound:
                lines.append(f"{prefix}.models_lower_bound=true")
    (directory / MANIFEST_NAME).write_text("\n".join(lines) + "\n", encoding="ascii")
    for inst in dataset.instances:
        decorated = with_comments(inst.formula,
                                  *_instance_comments(dataset.spec, inst))
        path = directory / f"{inst.index:04d}.cnf"
        path.write_text(emit_dimacs(decorated), encoding="ascii")
    return directory


def _parse_manifest(text: str, where: Path) -> dict[str, str]:
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{where}: line {lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        if key in entries:
            raise ValueError(f"{where}: line {lineno}: duplicate key {key!r}")
        entries[key] = value
    return entries


def _spec_from_manifest(entries: dict[str, str], where: Path) -> DatasetSpec:
    if entries.get("format") != _MANIFEST_FORMAT:
        raise ValueError(f"{where}: unsupported format {entries.get('format')!r}")

    def need(key: str) -> str:
        if key not in entries:
            raise ValueError(f"{where}: missing key {key!r}")
        return entries[key]

    family = need("family")
    kwargs: dict = {"family": family, "count": int(need("count")),
                    "seed": int(need("seed")), "filter": need("filter")}
    if family == "random3cnf":
        kwargs["num_vars"] = int(need("num_vars"))
        kwargs["ratio"] = float(need("ratio"))
    else:
        kwargs["num_vertices"] = int(need("num_vertices"))
        kwargs["num_colors"] = int(need("num_colors"))
    if kwargs["filter"] == "count-range":
        kwargs["lo"] = int(need("lo"))
        hi = need("hi")
        kwargs["hi"] = None if hi == "none" else int(hi)
    return DatasetSpec(**kwargs)


def _instances_from_manifest(spec: DatasetSpec, entries: dict[str, str],
                             where: Path,
                             formula_for: Callable[[int, int], Formula]) -> tuple:
    instances = []
    for index in range(spec.count):
        prefix = f"instance.{index}"
        if f"{prefix}.seed" not in entries:
            raise ValueError(f"{where}: missing key {prefix}.seed")
        seed = int(entries[f"{prefix}.seed"])
        candidate = int(entries.get(f"{prefix}.candidate", index))
        models = entries.get(f"{prefix}.models")
        lower = entries.get(f"{prefix}.models_lower_bound") == "true"
        instances.append(DatasetInstance(
            index=index, seed=seed, candidate_index=candidate,
            formula=formula_for(index, seed),
            model_count=None if models is None else int(models),
            count_is_lower_bound=lower))
    return tuple(instances)


def load_dataset(directory: str | Path) -> Dataset:
    """Read a persisted dataset back from its directory."""
    directory = Path(directory)
    manifest_path = directory / MANIFEST_NAME
    entries = _parse_manifest(manifest_path.read_text(encoding="ascii"), manifest_path)
    spec = _spec_from_manifest(entries, manifest_path)

    def formula_for(index: int, seed: int) -> Formula:
        path = directory / f"{index:04d}.cnf"
        # The on-disk comments are provenance decoration added at write time;
        # strip them so loading returns the dataset exactly as it was built
        # (and exactly as regenerate_dataset rebuilds it).
        return with_comments(parse_dimacs(path.read_text(encoding="ascii")))

    return Dataset(spec, _instances_from_manifest(spec, entries, manifest_path,
                                                  formula_for))


def regenerate_dataset(directory: str | Path) -> Dataset:
    """Rebuild a dataset from its manifest alone, ignoring the .cnf files.

    Formulas are regenerated from the recorded per-instance seeds; the result
    is bit-exact to what write_dataset stored (a property the tests pin).
    """
    directory = Path(directory)
    manifest_path = directory / MANIFEST_NAME
    entries = _parse_manifest(manifest_path.read_text(encoding="ascii"), manifest_path)
    spec = _spec_from_manifest(entries, manifest_path)

    def formula_for(index: int, seed: int) -> Formula:
        return _build_instance_formula(spec, seed)

    return Dataset(spec, _instances_from_manifest(spec, entries, manifest_path,
                                                  formula_for))
