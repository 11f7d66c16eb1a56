"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent input data (files, labels, records)."""


class ConfigError(ValueError):
    """Invalid experiment configuration value or combination."""


class StageError(RuntimeError):
    """Pipeline stage failure; the message names the stage that failed."""

    def __init__(self, stage: str, message: str):
        super().__init__(f"stage '{stage}' failed: {message}")
        self.stage = stage
