import importlib.util
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


def load(name):
    spec = importlib.util.spec_from_file_location(name, SCRIPTS / f"{name}.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


@pytest.mark.parametrize("name,argv", [
    ("verify_sweep", ["--r-max", "3"]),
    ("kolbig_check", ["--max-order", "4", "--digits", "30"]),
    ("bench_convergence", ["--orders", "2", "--digits", "8", "--max-terms", "10000"]),
])
def test_script_runs(name, argv, capsys):
    assert load(name).main(argv) == 0
    assert capsys.readouterr().out
