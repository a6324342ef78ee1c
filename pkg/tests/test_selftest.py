from berndt_forge import selftest
from berndt_forge.contour import IntegralSpec


def test_check_names_are_unique_and_qualified():
    names = [c.name for c in selftest.checks()]
    assert len(names) == len(set(names))
    assert all("/" in n for n in names)


def test_run_reports_every_check():
    lines = []
    assert selftest.run(out=lines.append) == 0
    assert len(lines) == len(selftest.checks())
    assert all(line.startswith("ok ") for line in lines)


def test_run_stops_at_first_failure(monkeypatch):
    def boom(deep):
        raise AssertionError("broken on purpose")

    first = selftest.checks()[0]
    monkeypatch.setattr(selftest, "checks", lambda: [selftest.Check("demo/fail", boom), first])
    lines = []
    assert selftest.run(out=lines.append) == 1
    assert lines == ["FAIL demo/fail: broken on purpose"]


def test_structure_grid():
    grid = selftest.structure_grid(2, 2, 4)
    assert grid == [
        IntegralSpec(1, 1, "plus"), IntegralSpec(5, 1, "plus"), IntegralSpec(9, 1, "plus"),
        IntegralSpec(3, 1, "minus"), IntegralSpec(7, 1, "minus"),
        IntegralSpec(5, 2, "plus"), IntegralSpec(9, 2, "plus"),
        IntegralSpec(5, 2, "minus"), IntegralSpec(9, 2, "minus"),
    ]


def test_legal_targets():
    targets = selftest.legal_targets(2, 5)
    tags = {(f.tag, f.p, f.m) for f in targets}
    assert ("Sbar", 3, 1) in tags and ("Ctilde", 1, 1) in tags
    assert ("S", 2, 2) in tags and ("Cprime", 2, 2) in tags
    assert all(f.m <= 2 and f.p <= 5 for f in targets)
    assert len(targets) == len(tags)
