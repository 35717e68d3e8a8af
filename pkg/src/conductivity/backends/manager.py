import importlib
import logging
from typing import Type

from .base import BaseBackend, BackendError
from ...config.backends import BACKENDS, BackendConfig
from ...config.settings import SolverConfig

logger = logging.getLogger(__name__)


class BackendManager:
    """Resolves effective conductivity backends from their configuration"""

    @staticmethod
    def get_config(name: str) -> BackendConfig:
        """Look up an enabled backend by name"""
        config = BACKENDS.get(name)
        if config is None:
            raise BackendError(f"Unknown backend '{name}', expected one of {sorted(BACKENDS)}")
        if not config.enabled:
            raise BackendError(f"Backend '{name}' is disabled")
        return config

    @staticmethod
    def get_backend_class(config: BackendConfig) -> Type[BaseBackend]:
        """
        Dynamically import and return the backend class from its string path
        Example path: 'src.conductivity.backends.dense.DenseBackend'
        """
        try:
            module_path, class_name = config.backend_class.rsplit('.', 1)
            module = importlib.import_module(module_path)
            return getattr(module, class_name)
        except (ImportError, AttributeError) as e:
            logger.error(f"Failed to load backend class {config.backend_class}: {e}")
            raise

    @staticmethod
    def initialize_backend(name: str, solver: SolverConfig = None) -> BaseBackend:
        """Initialize a backend by name"""
        config = BackendManager.get_config(name)
        backend_class = BackendManager.get_backend_class(config)
        backend = backend_class(solver, complex_support=config.complex_support, **(config.settings or {}))
        logger.debug(f"Initialized {config.name} backend")
        return backend
