from settings import budget, load_config, resolve_workers
from utils.constants import DEFAULT_CONFIG, WORKERS_ENV


def test_defaults_when_file_missing(tmp_path, monkeypatch):
    monkeypatch.delenv(WORKERS_ENV, raising=False)
    config = load_config(str(tmp_path / "missing.yml"))
    assert config == DEFAULT_CONFIG


def test_file_overrides_are_merged(tmp_path, monkeypatch):
    monkeypatch.delenv(WORKERS_ENV, raising=False)
    path = tmp_path / "config.yml"
    path.write_text("scan:\n  chunk_size: 7\n", encoding="utf-8")
    config = load_config(str(path))
    assert config["scan"]["chunk_size"] == 7
    assert config["scan"]["pruning"] == "auto"
    assert config["budgets"] == DEFAULT_CONFIG["budgets"]


def test_invalid_yaml_falls_back(tmp_path, monkeypatch):
    monkeypatch.delenv(WORKERS_ENV, raising=False)
    path = tmp_path / "config.yml"
    path.write_text("scan: [unclosed\n", encoding="utf-8")
    assert load_config(str(path)) == DEFAULT_CONFIG


def test_workers_environment(tmp_path, monkeypatch):
    monkeypatch.setenv(WORKERS_ENV, "3")
    assert load_config(str(tmp_path / "missing.yml"))["workers"] == 3
    monkeypatch.setenv(WORKERS_ENV, "many")
    assert load_config(str(tmp_path / "missing.yml"))["workers"] == DEFAULT_CONFIG["workers"]


def test_resolve_workers():
    assert resolve_workers(4) == 4
    assert resolve_workers(0) == 1
    assert resolve_workers() >= 1


def test_budget():
    assert budget("search_trials") > 0
