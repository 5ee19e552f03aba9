import pytest

from hvsim.config import DEFAULT_TOLERANCES, SCENARIO_DEFAULTS
from hvsim.errors import ConfigurationError
from hvsim.report_writer import report_to_dict
from hvsim.scenarios.base import CheckRecord, ScenarioConfig, ScenarioReport
from hvsim.scenarios.factory import ScenarioFactory
from hvsim.scenarios.runner import ScenarioRunner, run_scenario


SMALL_RUNS = {
    "verify-d2": (25, {}),
    "linearity-failure": (20, {}),
    "chsh-paths": (200, {}),
    "bell-original": (200, {}),
    "factored": (200, {"restarts": 2}),
    "singlet-max": (2, {}),
    "separable-max": (2, {"restarts": 2}),
    "mixed-ekert": (8, {"mixtures": 20, "settings": 10}),
    "werner": (2, {"werner_p": [0.0, 0.5, 0.7, 1.0]}),
    "norm-scan": (200, {}),
    "pure-criterion": (2, {"restarts": 3}),
}


def small_config(name, **overrides):
    samples, options = SMALL_RUNS[name]
    values = {"scenario": name, "seed": 7, "sample_count": samples, "options": dict(options)}
    values.update(overrides)
    return ScenarioConfig(**values)


class TestConfig:
    def test_sample_count_defaults_per_scenario(self):
        assert ScenarioConfig("norm-scan").sample_count == SCENARIO_DEFAULTS["norm-scan"]

    def test_unknown_scenario(self):
        with pytest.raises(ConfigurationError):
            ScenarioConfig("teleport")

    @pytest.mark.parametrize(
        "field, value",
        [
            ("sample_count", 0),
            ("seed", -1),
            ("threads", 0),
            ("output_format", "xml"),
            ("tolerances", {"exact": -1.0}),
            ("tolerances", {"loose": 0.1}),
            ("sample_count", 2.7),
            ("sample_count", "10"),
            ("seed", 1.5),
            ("threads", True),
            ("timing", "false"),
        ],
    )
    def test_rejects(self, field, value):
        with pytest.raises(ConfigurationError):
            ScenarioConfig("chsh-paths", **{field: value})

    def test_integral_floats_are_accepted(self):
        config = ScenarioConfig("chsh-paths", sample_count=12.0, seed=3.0)
        assert config.sample_count == 12
        assert isinstance(config.sample_count, int)
        assert config.seed == 3

    def test_tolerance_override(self):
        config = ScenarioConfig("chsh-paths", tolerances={"bound": 1e-3})
        assert config.tolerance("bound") == 1e-3
        assert config.tolerance("exact") == DEFAULT_TOLERANCES["exact"]
        assert list(config.resolved_tolerances) == sorted(DEFAULT_TOLERANCES)


class TestCheckRecord:
    def test_close(self):
        assert CheckRecord.close("x", 1.0, 1.0 + 1e-9, 1e-8).passed
        assert not CheckRecord.close("x", 1.0, 1.1, 1e-8).passed

    def test_at_most(self):
        assert CheckRecord.at_most("x", 2.0, 2.0 + 1e-10, 1e-9).passed
        assert not CheckRecord.at_most("x", 2.0, 2.1, 1e-9).passed

    def test_greater_is_strict(self):
        assert not CheckRecord.greater("x", 0.0, 0.0).passed
        assert CheckRecord.greater("x", 0.0, 1e-300).passed

    def test_flag(self):
        record = CheckRecord.flag("x", False)
        assert record.expected is True
        assert not record.passed

    def test_report_without_checks_passes(self):
        assert ScenarioReport("chsh-paths", inputs={}).passed


class TestFactory:
    def test_every_configured_scenario_is_registered(self):
        assert set(ScenarioFactory.available()) == set(SCENARIO_DEFAULTS)

    def test_descriptions(self):
        for description in ScenarioFactory.available().values():
            assert description


@pytest.mark.parametrize("name", sorted(SMALL_RUNS))
def test_scenario_passes(name):
    report = run_scenario(small_config(name))
    failed = [(c.name, c.expected, c.observed) for c in report.failed_checks]
    assert report.passed, failed
    assert report.checks


@pytest.mark.parametrize("name", ["chsh-paths", "factored", "norm-scan", "verify-d2"])
def test_thread_count_does_not_change_report(name):
    serial = report_to_dict(run_scenario(small_config(name, threads=1)))
    parallel = report_to_dict(run_scenario(small_config(name, threads=4)))
    serial["inputs"].pop("threads")
    parallel["inputs"].pop("threads")
    assert serial == parallel


def test_same_seed_same_report():
    first = report_to_dict(run_scenario(small_config("bell-original")))
    second = report_to_dict(run_scenario(small_config("bell-original")))
    assert first == second


def test_seed_changes_samples():
    first = run_scenario(small_config("norm-scan", seed=1))
    second = run_scenario(small_config("norm-scan", seed=2))
    assert first.checks[0].observed != second.checks[0].observed


def test_tightened_tolerance_fails_check():
    report = run_scenario(
        small_config("verify-d2", sample_count=3, tolerances={"quadrature": 1e-15})
    )
    assert not report.passed
    assert [c.name for c in report.failed_checks] == ["quadrature matches closed form"]


def test_runner_reports_progress():
    calls = []

    def callback(step_description, status, current_step, total_steps):
        calls.append((current_step, total_steps, status))

    runner = ScenarioRunner(small_config("chsh-paths", sample_count=5))
    report = runner.execute(callback)
    assert calls[0] == (1, 3, "Starting")
    assert calls[-1] == (3, 3, "Completed")
    assert report.duration is not None
    assert report.inputs["seed"] == 7
    assert report.inputs["sample_count"] == 5


def test_werner_rejects_bad_parameter():
    with pytest.raises(ConfigurationError):
        run_scenario(small_config("werner", options={"werner_p": [1.5]}))


def test_mixed_ekert_user_atoms():
    atoms = [
        {"n_a": [0, 0, 1], "n_b": [1, 0, 0], "weight": 0.25},
        {"n_a": [1, 0, 0], "n_b": [0, 0, 1], "weight": 0.75},
    ]
    report = run_scenario(small_config("mixed-ekert", options={"atoms": atoms, "settings": 10}))
    assert report.passed
    assert report.details["mixtures"] == 1


def test_mixed_ekert_bad_atoms():
    with pytest.raises(ConfigurationError):
        run_scenario(small_config("mixed-ekert", options={"atoms": [{"n_a": [0, 0, 1]}]}))


def test_chsh_paths_records_nonzero_tilde_sum_fraction():
    report = run_scenario(small_config("chsh-paths"))
    fraction = report.details["pure_state_nonzero_tilde_sum_fraction"]
    assert 0.0 < fraction <= 1.0
