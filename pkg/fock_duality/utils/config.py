"""
Settings for fock_duality

Guard values and output preferences that bound how much work the library and
the command-line tool are allowed to do.
"""

import os
import json
import logging

logger = logging.getLogger(__name__)

# Environment variable overriding the Fock dimension guard
MAX_DK_ENV = 'FOCK_MAX_DK'


class AppConfig:
    """
    Size guards and output preferences backed by a JSON file.

    Missing or unreadable files fall back to the defaults.
    """

    def __init__(self, config_file=None):
        """
        Args:
            config_file (str): settings file, default ~/.fock_duality_config.json
        """
        if config_file is None:
            home_dir = os.path.expanduser('~')
            self.config_file = os.path.join(home_dir, '.fock_duality_config.json')
        else:
            self.config_file = config_file

        self.defaults = {
            'max_dk': 24,
            'verify_max_dk': 15,
            'tensor_max_entries': 10 ** 6,
            'tensor_max_rank': 5,
            'output_format': 'table',
            'log_level': 'WARNING',
        }

        self.config = self.load()

    def load(self):
        """
        Read the settings file.

        Returns:
            dict: stored settings, or a copy of the defaults
        """
        try:
            if os.path.exists(self.config_file):
                with open(self.config_file, 'r') as f:
                    loaded = json.load(f)
                if not isinstance(loaded, dict):
                    raise ValueError("configuration root must be an object")
                return loaded
            return dict(self.defaults)
        except Exception as e:
            logger.warning("Error loading configuration: %s", e)
            return dict(self.defaults)

    def save(self):
        """
        Write the settings file.

        Returns:
            bool: False if the file could not be written
        """
        try:
            with open(self.config_file, 'w') as f:
                json.dump(self.config, f, indent=2, sort_keys=True)
            return True
        except Exception as e:
            logger.warning("Error saving configuration: %s", e)
            return False

    def get(self, key, default=None):
        """
        Look up a setting; unknown keys give `default`, known ones their
        built-in default.
        """
        if default is None and key in self.defaults:
            default = self.defaults[key]
        return self.config.get(key, default)

    def set(self, key, value):
        """
        Change a known setting in memory (call save() to persist).

        Returns:
            bool: False for keys without a default
        """
        if key not in self.defaults:
            logger.warning("Error setting configuration: unknown key %r", key)
            return False
        self.config[key] = value
        return True

    def reset(self):
        """
        Restore and save the defaults.

        Returns:
            bool: result of save()
        """
        self.config = dict(self.defaults)
        return self.save()

    @property
    def max_dk(self):
        """
        Effective Fock guard on d*k.

        FOCK_MAX_DK wins over the file. A malformed or non-positive value
        raises ValueError.
        """
        raw = os.environ.get(MAX_DK_ENV)
        if raw is not None and raw.strip():
            try:
                value = int(raw)
            except ValueError:
                raise ValueError(f"{MAX_DK_ENV} must be an integer, got {raw!r}") from None
            if value < 1:
                raise ValueError(f"{MAX_DK_ENV} must be positive, got {value}")
            return value
        return int(self.get('max_dk'))

    @property
    def tensor_max_entries(self):
        return int(self.get('tensor_max_entries'))


def default_max_dk():
    """Guard value from the default configuration and environment."""
    return AppConfig().max_dk


def default_tensor_max_entries():
    """Tensor scale guard (d**n) from the default configuration."""
    return AppConfig().tensor_max_entries
