# third parties
import pytest

# application configuration
from youwol.sspa.configuration import EngineLimits, OracleBounds, env_utils
from youwol.sspa.configuration.env_utils import (
    BooleanParsingError,
    EnvVarNotSet,
    FloatParsingError,
    IntegerParsingError,
)
from youwol.sspa.configuration.env_vars import SspaEnvironmentVars as Env

# application services
from youwol.sspa.services import context, get_service_engine_limits


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in Env:
        monkeypatch.delenv(name.value, raising=False)


class TestEnvUtils:
    @pytest.mark.parametrize("value, expected", [("yes", True), (" 1 ", True), ("False", False), ("n", False)])
    def test_boolean(self, monkeypatch, value: str, expected: bool):
        monkeypatch.setenv(Env.SSPA_TRANSFORM_KNOWLEDGE.value, value)
        assert env_utils.boolean(Env.SSPA_TRANSFORM_KNOWLEDGE) is expected

    def test_boolean_not_parsable(self, monkeypatch):
        monkeypatch.setenv(Env.SSPA_TRANSFORM_KNOWLEDGE.value, "maybe")
        with pytest.raises(BooleanParsingError):
            env_utils.boolean(Env.SSPA_TRANSFORM_KNOWLEDGE)

    def test_not_set(self):
        with pytest.raises(EnvVarNotSet):
            env_utils.integer(Env.SSPA_MAX_RULES)
        assert env_utils.integer(Env.SSPA_MAX_RULES, 7) == 7

    @pytest.mark.parametrize("value", ["0", "-3", "1.5", "ten"])
    def test_integer_not_parsable(self, monkeypatch, value: str):
        monkeypatch.setenv(Env.SSPA_MAX_RULES.value, value)
        with pytest.raises(IntegerParsingError):
            env_utils.integer(Env.SSPA_MAX_RULES)

    @pytest.mark.parametrize("value", ["0", "-1", "soon"])
    def test_float_not_parsable(self, monkeypatch, value: str):
        monkeypatch.setenv(Env.SSPA_TIMEOUT.value, value)
        with pytest.raises(FloatParsingError):
            env_utils.positive_float(Env.SSPA_TIMEOUT)

    def test_maybe_path(self, monkeypatch, tmp_path):
        assert env_utils.maybe_path(Env.SSPA_LOG_FILE) is None
        monkeypatch.setenv(Env.SSPA_LOG_FILE.value, str(tmp_path / "logs" / "sspa.log"))
        path = env_utils.maybe_path(Env.SSPA_LOG_FILE)
        assert path is not None and path.parent.is_dir()


class TestLimits:
    def test_defaults(self):
        assert EngineLimits.from_env() == EngineLimits()
        assert OracleBounds.from_env() == OracleBounds()

    def test_from_env(self, monkeypatch):
        monkeypatch.setenv(Env.SSPA_MAX_RULES.value, "100")
        monkeypatch.setenv(Env.SSPA_TIMEOUT.value, "2.5")
        monkeypatch.setenv(Env.SSPA_TRANSFORM_KNOWLEDGE.value, "true")
        monkeypatch.setenv(Env.SSPA_ORACLE_POOL.value, "3")
        limits = EngineLimits.from_env()
        assert (limits.max_rules, limits.timeout, limits.transform_knowledge) == (100, 2.5, True)
        assert limits.max_term_depth == EngineLimits().max_term_depth
        assert OracleBounds.from_env().nonce_pool == 3

    def test_overrides(self):
        limits = EngineLimits().with_overrides(max_rules=10, timeout=None)
        assert limits.max_rules == 10
        assert limits.timeout == EngineLimits().timeout

    def test_service_reads_the_environment_once(self, monkeypatch):
        monkeypatch.setenv(Env.SSPA_MAX_RULES.value, "42")
        monkeypatch.setattr(context, "engine_limits", None)
        build = get_service_engine_limits()
        assert build().max_rules == 42
        monkeypatch.setenv(Env.SSPA_MAX_RULES.value, "43")
        assert build().max_rules == 42
        assert get_service_engine_limits()().max_rules == 42
