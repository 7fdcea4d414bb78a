import io
import math
import subprocess
import sys

import pytest

from snellwave import FocusEllipse, Isotropic, Scene
from snellwave.cli import run
from snellwave.sceneio import dump_scene, parse_scene
from snellwave.errors import InvalidScene, SceneFileError

ELLIPSE = """\
# left: fastest towards +x; right: fastest towards +y
region1.profile = ellipse
region1.a = 1
region1.eps = 0.5
region1.phi = 0
region2.profile = ellipse
region2.a = 1
region2.eps = 0.5
region2.phi = 1.5707963267948966
"""

CLASSIC = "region1.profile = isotropic\nregion1.speed = 1\nregion2.profile = isotropic\nregion2.speed = 2\n"


@pytest.fixture
def scene_file(tmp_path):
    def write(text, name="scene.cfg"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_critical(scene_file):
    code, out, _ = call("critical", "--scene", scene_file(ELLIPSE))
    assert code == 0
    assert out == f"theta_c_plus = {math.pi / 6!r}\ntheta_c_minus = none\n"


def test_refract_in_degrees(scene_file):
    code, out, _ = call("refract", "--scene", scene_file(CLASSIC), "--theta1", "10", "--degrees")
    assert code == 0
    theta2 = float(out.splitlines()[1].split("=")[1])
    assert math.sin(math.radians(theta2)) == pytest.approx(2 * math.sin(math.radians(10)), abs=1e-12)


def test_reflect(scene_file):
    code, out, _ = call("reflect", "--scene", scene_file(ELLIPSE), "--theta1", repr(math.pi / 6))
    assert code == 0
    assert float(out.split("=")[1]) == pytest.approx(5 * math.pi / 6, abs=1e-12)


def test_trace_writes_csv(scene_file, tmp_path):
    csv = tmp_path / "t.csv"
    code, out, _ = call("trace", "--scene", scene_file(ELLIPSE), "--from", "-1,-2", "--to", "-1,2", "--csv", str(csv))
    assert code == 0
    assert "classification = three-segment+" in out
    rows = csv.read_text().splitlines()
    assert rows[0] == "segment,region,x0,y0,x1,y1,t0,t1,theta"
    assert len(rows) == 4
    assert float(rows[-1].split(",")[7]) == pytest.approx(8 / 3 + 4 / math.sqrt(3), abs=1e-10)


def test_wavefront_outputs(scene_file, tmp_path):
    csv, svg = tmp_path / "w.csv", tmp_path / "w.svg"
    code, out, _ = call("wavefront", "--scene", scene_file(ELLIPSE), "--source", "-1,0", "--time", "2",
                        "--samples", "64", "--csv", str(csv), "--svg", str(svg))
    assert code == 0
    assert "closed = yes" in out
    assert csv.read_text().splitlines()[0] == "arc,kind,param,x,y"
    text = svg.read_text()
    for cls in ("standard", "refracted", "reflected"):
        assert f'class="{cls}"' in text


def test_cutlocus_csv(scene_file, tmp_path):
    csv = tmp_path / "c.csv"
    code, out, _ = call("cutlocus", "--scene", scene_file(ELLIPSE), "--source", "-1,0", "--tmax", "3",
                        "--samples", "5", "--csv", str(csv))
    assert code == 0 and out.startswith("branch +: 5 samples")
    rows = csv.read_text().splitlines()
    assert rows[0] == "branch,t,x,y" and len(rows) == 6 and rows[1].startswith("+,")


def test_verify_exit_code(scene_file):
    code, out, _ = call("verify", "--scene", scene_file(ELLIPSE), "--cases", "4", "--grid", "128", "--rounds", "3")
    assert code == 0
    assert out.strip().endswith("4/4 cases within tolerance")


def test_output_is_deterministic(scene_file):
    path = scene_file(ELLIPSE)
    args = ("wavefront", "--scene", path, "--source", "-1,0", "--time", "1.7", "--samples", "64")
    assert call(*args) == call(*args)


def test_scene_dump_round_trips(scene_file):
    code, out, _ = call("scene-dump", "--scene", scene_file(ELLIPSE))
    assert code == 0
    assert parse_scene(out) == parse_scene(ELLIPSE)
    scene = Scene(Isotropic(0.1), FocusEllipse(1 / 3, 0.3, 2.0))
    assert parse_scene(dump_scene(scene)) == scene


@pytest.mark.parametrize("text, line", [
    ("region1.profile = ellipse\nregion1.a\n", 2),
    ("region1.profile = blob\nregion2.profile = isotropic\nregion2.speed = 1\n", 1),
    (CLASSIC + "region3.speed = 1\n", 5),
    (CLASSIC.replace("speed = 2", "speed = fast"), 4),
    (CLASSIC + "region1.speed = 3\n", 5),
])
def test_syntax_errors_carry_line_numbers(text, line, scene_file):
    with pytest.raises(SceneFileError, match=f"line {line}"):
        parse_scene(text)
    code, _, err = call("critical", "--scene", scene_file(text))
    assert code == 2 and f"line {line}" in err


def test_invalid_values_exit_one(scene_file):
    bad = CLASSIC.replace("speed = 2", "speed = -2")
    with pytest.raises(InvalidScene):
        parse_scene(bad)
    assert call("critical", "--scene", scene_file(bad))[0] == 1


def test_usage_errors_exit_two(scene_file):
    assert call("frobnicate")[0] == 2
    assert call("critical")[0] == 2
    assert call("trace", "--scene", scene_file(CLASSIC), "--from", "1", "--to", "2,3")[0] == 2
    assert call("critical", "--scene", "/nonexistent/scene.cfg")[0] == 2


def test_domain_errors_exit_one(scene_file):
    path = scene_file(ELLIPSE)
    assert call("refract", "--scene", path, "--theta1", "2.0")[0] == 1
    assert call("cutlocus", "--scene", path, "--source", "-1,0", "--tmax", "0.5")[0] == 1
    assert call("wavefront", "--scene", path, "--source", "1,0", "--time", "1")[0] == 1


def test_console_entry_point(scene_file):
    proc = subprocess.run([sys.executable, "-m", "snellwave.cli", "critical", "--scene", scene_file(CLASSIC)],
                          capture_output=True, text=True, check=True)
    assert proc.stdout.startswith("theta_c_plus = 0.52359877559")


def test_supercritical_refraction_reports_total_reflection(scene_file):
    code, out, _ = call("refract", "--scene", scene_file(CLASSIC), "--theta1", "0.6")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "outcome = total-reflection"
    assert float(lines[1].split("=")[1]) == pytest.approx(math.pi - 0.6, abs=1e-12)


def test_early_wavefront_is_one_closed_standard_arc(scene_file, tmp_path):
    csv = tmp_path / "early.csv"
    code, out, _ = call("wavefront", "--scene", scene_file(ELLIPSE), "--source", "-1,0", "--time", "0.1",
                        "--samples", "128", "--csv", str(csv))
    assert code == 0 and "closed = yes" in out
    rows = [r.split(",") for r in csv.read_text().splitlines()[1:]]
    assert len(rows) == 128 and {(r[0], r[1]) for r in rows} == {("0", "standard")}
    assert rows[0][3:] == rows[-1][3:] or abs(float(rows[0][4]) - float(rows[-1][4])) < 1e-15


def test_csv_output_is_byte_identical(scene_file, tmp_path):
    path = scene_file(ELLIPSE)
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for target in (a, b):
        call("cutlocus", "--scene", path, "--source", "-1,0", "--tmax", "2.5", "--samples", "8", "--csv", str(target))
    assert a.read_bytes() == b.read_bytes()
