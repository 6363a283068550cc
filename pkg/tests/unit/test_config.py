"""
Unit tests for settings and metrics plumbing.
"""
import pytest
import structlog
from prometheus_client import REGISTRY

from src.core.config import Settings, settings
from src.core.exceptions import ConfigurationError
from src.core.logging import configure_library_default, get_logger
from src.core.metrics import export_metrics
from src.spectra.hamming_spectrum import lambda_min_exact


class TestSettings:
    """Test suite for Settings."""

    def test_defaults(self) -> None:
        """Test default limits."""
        settings = Settings()
        assert settings.z2_oracle_cap == 16
        assert settings.z4_oracle_cap == 14
        assert settings.table_decimals == 3
        assert settings.default_alphas[0] == 0.01
        assert settings.default_alphas[-1] == 0.17
        assert len(settings.default_alphas) == 17

    def test_environment_override(self, monkeypatch: pytest.MonkeyPatch) -> None:
        """Test HAMMING_SPECTRA_* variables override defaults."""
        monkeypatch.setenv("HAMMING_SPECTRA_Z2_ORACLE_CAP", "10")
        monkeypatch.setenv("HAMMING_SPECTRA_DEFAULT_ALPHAS", "[0.05, 0.1]")
        settings = Settings()
        assert settings.z2_oracle_cap == 10
        assert settings.default_alphas == [0.05, 0.1]

    def test_alpha_grid_from_string(self) -> None:
        """Test a comma-separated grid is parsed."""
        assert Settings(default_alphas="0.05, 0.1").default_alphas == [0.05, 0.1]

    def test_validate_limits(self) -> None:
        """Test ceilings are enforced."""
        with pytest.raises(ConfigurationError, match="Z2_ORACLE_CAP"):
            Settings(z2_oracle_cap=30).validate_limits()
        with pytest.raises(ConfigurationError, match="DEFAULT_ALPHAS"):
            Settings(default_alphas=[0.6]).validate_limits()
        with pytest.raises(ConfigurationError, match="DEBUG"):
            Settings(environment="prod", debug=True).validate_limits()

    def test_effective_workers(self, mocker) -> None:
        """Test threads = 0 means one worker per CPU."""
        mocker.patch("src.core.config.os.cpu_count", return_value=8)
        assert Settings(threads=0).effective_workers() == 8
        assert Settings(threads=3).effective_workers() == 3


class TestMetrics:
    """Test suite for operation metrics."""

    def test_operation_counted(self) -> None:
        """Test tracked operations increment their counter."""
        labels = {"operation": "lambda_min_exact", "status": "success"}
        before = REGISTRY.get_sample_value("spectra_operations_total", labels) or 0.0
        lambda_min_exact(6, 2)
        assert REGISTRY.get_sample_value("spectra_operations_total", labels) == before + 1

    def test_export(self, tmp_path) -> None:
        """Test the textfile export."""
        target = tmp_path / "metrics.prom"
        lambda_min_exact(6, 2)
        export_metrics(str(target))
        assert "spectra_operations_total" in target.read_text()


class TestLibraryLogging:
    """Test suite for logging when the CLI has not configured structlog."""

    @pytest.fixture
    def unconfigured(self, monkeypatch: pytest.MonkeyPatch):
        saved = structlog.get_config()
        monkeypatch.setattr(settings, "log_level", "WARNING")
        structlog.reset_defaults()
        yield
        structlog.reset_defaults()
        structlog.configure(**saved)

    def test_debug_suppressed_and_stdout_clean(
        self, unconfigured, capsys: pytest.CaptureFixture[str]
    ) -> None:
        """Test library calls keep stdout clean and honour the WARNING default."""
        configure_library_default()
        lambda_min_exact(12, 4)
        get_logger("library").debug("hidden_event")
        get_logger("library").warning("shown_event")

        captured = capsys.readouterr()
        assert captured.out == ""
        assert "hidden_event" not in captured.err
        assert "shown_event" in captured.err

    def test_existing_configuration_kept(self, unconfigured) -> None:
        """Test an application's own configuration is not replaced."""
        structlog.configure(processors=[structlog.processors.JSONRenderer()])
        configure_library_default()
        assert len(structlog.get_config()["processors"]) == 1
