import os
import pytest

import superdense as sd

ROOT = os.environ.get("SUPERDENSE_ROOT", os.path.join(os.path.dirname(__file__), "..", ".."))


def test_convergents_golden():
    rows = sd.convergents(sd.Slope("cf:0;(1)"), 10)
    assert [r["q"] for r in rows] == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89]
    assert rows[2]["eps"]["exact"] == "-1+2*alpha"
    assert rows[2]["eps"]["value"] == pytest.approx(0.2360679775)


def test_gap_spectrum_n4():
    g = sd.gap_spectrum(sd.Slope("cf:0;(1)"), 4)
    got = sorted((round(e["value"], 5), e["multiplicity"]) for e in g["gaps"])
    assert got == [(0.1459, 2), (0.23607, 3)]


def test_surface_topology():
    l = sd.Surface.load(os.path.join(ROOT, "data", "lsurface.txt"))
    assert l.size == 3
    assert l.topology() == {"V": 1, "E": 6, "F": 3, "chi": -2, "genus": 2}
    assert sd.Surface.torus().topology()["genus"] == 1
    assert sd.Surface.parse("perm: s=3 u=3,2,1 r=2,1,3").perm_string() == l.perm_string()


def test_iet_orbit_matches_cli():
    rows = sd.iet_orbit(sd.Surface.l_surface(), sd.Slope("rat:3/10"), "1/4", 12)
    assert len(rows) == 12
    assert rows[0] == (1, "1/4")
    status, out, _ = sd.run_cli(
        ["iet", "orbit", "--surface", os.path.join(ROOT, "data", "lsurface.txt"), "--slope", "rat:3/10",
         "--start", "1/4", "--steps", "12"])
    assert status == 0
    cli_rows = [line.split(",") for line in out.splitlines()[1:]]
    assert [(int(r[1]), r[3]) for r in cli_rows] == rows


def test_singularity_raises():
    with pytest.raises(sd.SingularityError):
        sd.iet_orbit(sd.Surface.l_surface(), sd.Slope("cf:0;(1)"), "2-alpha", 3)


def test_chain_cover_audit():
    r = sd.chain_cover_audit(5, sd.Slope("cf:0;(2)"), 3)
    assert r["passed"]
    assert r["chains"] == 6
    assert r["uncovered"] == ["0", "1-alpha", "1", "2-alpha", "2", "3-alpha"]


def test_certificate_and_budget():
    c = sd.certify(sd.Surface.torus(), sd.Slope("cf:0;(1)"), 10)
    assert c["m_star"] == 291
    assert c["passed"]
    assert c["gap_limit"] == "8/89"
    with pytest.raises(sd.BudgetError):
        sd.certify(sd.Surface.l_surface(), sd.Slope("cf:0;(2)"), 6, budget=1000)
    with pytest.raises(sd.SuperdenseError, match="degenerate"):
        sd.certify(sd.Surface.torus(), sd.Slope("cf:0;(1)"), 2)


def test_scan_and_cover():
    rows = sd.gap_product_scan(sd.Surface.l_surface(), sd.Slope("cf:0;(1)"), [1000, 100])
    assert [r[0] for r in rows] == [100, 1000]
    assert rows[0][1] == "5-8*alpha"
    r1 = sd.covering_radius(sd.Surface.l_surface(), sd.Slope("cf:0;(1)"), 200.0, grid=16, jobs=1)
    r2 = sd.covering_radius(sd.Surface.l_surface(), sd.Slope("cf:0;(1)"), 200.0, grid=16, jobs=2)
    assert r1 == r2
    assert 0 < r1 < 0.1


def test_cli_in_process():
    status, out, err = sd.run_cli(["cf", "--slope", "rat:5/12"])
    assert status == 0
    assert "# digits [0;2,2,2]" in out
    status, _, err = sd.run_cli(["cf", "--slope", "nope"])
    assert status == 1
    assert err
