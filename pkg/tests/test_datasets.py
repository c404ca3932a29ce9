"""Dataset builders and their persistence: manifests, reload, regeneration."""

import filecmp
import random

import pytest

from conftest import truth_table_count, truth_table_sat
from gsatlab import (
    DatasetSpec,
    build_dataset,
    instance_seed,
    load_dataset,
    regenerate_dataset,
    two_tree_coloring_count,
    write_dataset,
)
from gsatlab.generate import MANIFEST_NAME, _build_instance_formula


def spec_random(count=6, seed=17, num_vars=18, ratio=4.25, **kw):
    return DatasetSpec(family="random3cnf", count=count, seed=seed,
                       num_vars=num_vars, ratio=ratio, **kw)


# --------------------------------------------------------------- validation

def test_spec_validation_catches_cross_field_mistakes():
    with pytest.raises(ValueError, match="unknown family"):
        DatasetSpec(family="horn", count=1, seed=0)
    with pytest.raises(ValueError, match="num_vars"):
        DatasetSpec(family="random3cnf", count=1, seed=0, ratio=4.25)
    with pytest.raises(ValueError, match="do not apply"):
        spec_random(num_vertices=5)
    with pytest.raises(ValueError, match="num_vertices"):
        DatasetSpec(family="coloring", count=1, seed=0, num_colors=3)
    with pytest.raises(ValueError, match="do not apply"):
        DatasetSpec(family="coloring", count=1, seed=0, num_vertices=5,
                    num_colors=3, ratio=4.25)
    with pytest.raises(ValueError, match="random3cnf only"):
        DatasetSpec(family="coloring", count=1, seed=0, num_vertices=5,
                    num_colors=3, filter="satisfiable-only")
    with pytest.raises(ValueError, match="needs lo"):
        spec_random(filter="count-range")
    with pytest.raises(ValueError, match="hi > lo"):
        spec_random(filter="count-range", lo=10, hi=10)
    with pytest.raises(ValueError, match="count-range filter only"):
        spec_random(lo=3)


# ----------------------------------------------------------------- builders

def test_unfiltered_dataset_is_reproducible_and_indexed():
    spec = spec_random(filter="none")
    ds = build_dataset(spec)
    again = build_dataset(spec)
    assert ds == again
    assert not ds.certified_satisfiable
    assert len(ds.instances) == 6
    for i, inst in enumerate(ds.instances):
        assert inst.index == i
        assert inst.candidate_index == i
        assert inst.seed == instance_seed(spec, i)
        assert inst.model_count is None
        assert inst.formula.num_vars == 18


def test_satisfiable_only_keeps_sat_and_skips_unsat_candidates():
    spec = spec_random(count=10, seed=23, num_vars=16, ratio=5.5,
                       filter="satisfiable-only")
    ds = build_dataset(spec)
    assert ds.certified_satisfiable
    assert len(ds.instances) == 10
    kept = set()
    for inst in ds.instances:
        assert truth_table_sat(inst.formula)
        kept.add(inst.candidate_index)
    # At ratio 5.5 rejections must occur, and each one is a true negative.
    last = ds.instances[-1].candidate_index
    skipped = set(range(last)) - kept
    assert skipped
    for candidate in skipped:
        formula = _build_instance_formula(spec, instance_seed(spec, candidate))
        assert not truth_table_sat(formula)


def test_count_range_records_exact_counts():
    spec = spec_random(count=8, seed=31, num_vars=16, ratio=4.25,
                       filter="count-range", lo=1, hi=25)
    ds = build_dataset(spec)
    assert ds.certified_satisfiable
    for inst in ds.instances:
        assert not inst.count_is_lower_bound
        assert 1 < inst.model_count <= 25
        assert truth_table_count(inst.formula) == inst.model_count


def test_count_range_unbounded_above_records_lower_bounds():
    lo = 4
    spec = spec_random(count=10, seed=37, num_vars=14, ratio=4.0,
                       filter="count-range", lo=lo, hi=None)
    ds = build_dataset(spec)
    flagged = 0
    for inst in ds.instances:
        exact = truth_table_count(inst.formula)
        assert exact > lo
        assert inst.model_count == lo + 1  # counting stops at the cap
        if inst.count_is_lower_bound:
            flagged += 1
            assert exact > lo + 1
        else:
            assert exact == lo + 1
    assert flagged  # far more than 5 models is typical at this ratio


def test_coloring_dataset_matches_closed_form():
    for num_colors, certified in ((2, False), (3, True), (4, True)):
        spec = DatasetSpec(family="coloring", count=4, seed=41,
                           num_vertices=5, num_colors=num_colors)
        ds = build_dataset(spec)
        assert ds.certified_satisfiable == certified
        expected = two_tree_coloring_count(5, num_colors)
        for inst in ds.instances:
            assert inst.model_count == expected
            assert not inst.count_is_lower_bound
            assert truth_table_count(inst.formula) == expected


def test_coloring_datasets_share_trees_across_color_counts():
    # The per-instance seed depends only on (master seed, index), so color
    # count changes re-encode the same underlying trees.
    spec3 = DatasetSpec(family="coloring", count=5, seed=43,
                        num_vertices=10, num_colors=3)
    spec4 = DatasetSpec(family="coloring", count=5, seed=43,
                        num_vertices=10, num_colors=4)
    seeds3 = [instance_seed(spec3, i) for i in range(5)]
    seeds4 = [instance_seed(spec4, i) for i in range(5)]
    assert seeds3 == seeds4


def test_jobs_do_not_change_results():
    spec = spec_random(count=6, seed=47, num_vars=14, ratio=4.5,
                       filter="satisfiable-only")
    assert build_dataset(spec, jobs=1) == build_dataset(spec, jobs=4)


# -------------------------------------------------------------- persistence

@pytest.mark.parametrize("spec", [
    spec_random(filter="none"),
    spec_random(count=4, seed=23, num_vars=14, ratio=4.5,
                filter="satisfiable-only"),
    spec_random(count=4, seed=31, num_vars=14, ratio=4.25,
                filter="count-range", lo=1, hi=25),
    spec_random(count=4, seed=37, num_vars=12, ratio=4.0,
                filter="count-range", lo=4, hi=None),
    DatasetSpec(family="coloring", count=4, seed=41, num_vertices=6,
                num_colors=3),
], ids=["none", "sat-only", "bucket", "bucket-open", "coloring"])
def test_write_load_round_trip(tmp_path, spec):
    ds = build_dataset(spec)
    directory = write_dataset(ds, tmp_path / "ds")
    assert (directory / MANIFEST_NAME).exists()
    names = sorted(p.name for p in directory.glob("*.cnf"))
    assert names == [f"{i:04d}.cnf" for i in range(spec.count)]

    loaded = load_dataset(directory)
    assert loaded == ds

    # Writing what was loaded reproduces the files byte for byte.
    second = write_dataset(loaded, tmp_path / "ds2")
    for name in [MANIFEST_NAME] + names:
        assert filecmp.cmp(directory / name, second / name, shallow=False), name


def test_manifest_format_line_comes_first(tmp_path):
    ds = build_dataset(spec_random(filter="none"))
    directory = write_dataset(ds, tmp_path / "ds")
    first = (directory / MANIFEST_NAME).read_text().splitlines()[0]
    assert first == "format=gsatlab-dataset-1"


def test_regenerate_rebuilds_formulas_from_manifest_alone(tmp_path):
    ds = build_dataset(spec_random(count=5, seed=23, num_vars=14, ratio=4.5,
                                   filter="satisfiable-only"))
    directory = write_dataset(ds, tmp_path / "ds")
    for cnf in directory.glob("*.cnf"):
        cnf.unlink()
    assert regenerate_dataset(directory) == ds
    with pytest.raises(FileNotFoundError):
        load_dataset(directory)  # needs the .cnf files


def test_load_missing_directory_raises(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_dataset(tmp_path / "nope")


@pytest.mark.parametrize("mangle,fragment", [
    (lambda lines: ["format=other-1"] + lines[1:], "unsupported format"),
    (lambda lines: lines[1:], "unsupported format"),
    (lambda lines: lines + ["no equals sign here"], "expected key=value"),
    (lambda lines: lines + [lines[1]], "duplicate key"),
    (lambda lines: [l for l in lines if not l.startswith("instance.0.seed")],
     "missing key"),
])
def test_load_rejects_mangled_manifests(tmp_path, mangle, fragment):
    ds = build_dataset(spec_random(count=2, filter="none"))
    directory = write_dataset(ds, tmp_path / "ds")
    manifest = directory / MANIFEST_NAME
    lines = manifest.read_text().splitlines()
    manifest.write_text("\n".join(mangle(lines)) + "\n")
    with pytest.raises(ValueError, match=fragment):
        load_dataset(directory)
