from dataclasses import dataclass
from typing import Dict, Any, Optional


@dataclass
class BackendConfig:
    """Configuration for an effective conductivity backend"""
    name: str
    enabled: bool
    backend_class: str  # Full path to backend class
    complex_support: bool  # Whether the backend accepts complex coefficients
    settings: Optional[Dict[str, Any]] = None


BACKENDS = {
    'dense': BackendConfig(
        name='dense',
        enabled=True,
        backend_class='src.conductivity.backends.dense.DenseBackend',
        complex_support=True,
        settings={}
    ),
    'cg': BackendConfig(
        name='cg',
        enabled=True,
        backend_class='src.conductivity.backends.cg.CGBackend',
        complex_support=False,  # Real positive coefficients only
        settings={}
    ),
}


def get_enabled_backends() -> Dict[str, BackendConfig]:
    """Get all enabled backends"""
    return {k: v for k, v in BACKENDS.items() if v.enabled}


def enable_backend(backend_id: str) -> None:
    """Enable a specific backend"""
    if backend_id in BACKENDS:
        BACKENDS[backend_id].enabled = True


def disable_backend(backend_id: str) -> None:
    """Disable a specific backend"""
    if backend_id in BACKENDS:
        BACKENDS[backend_id].enabled = False
