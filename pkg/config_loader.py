"""
Configuration loader for the conjugation benchmarks
Supports YAML presets under config/ with command-line overrides
"""

import yaml
import argparse
from pathlib import Path
from typing import Any, Dict, List, Optional, Union
from dataclasses import dataclass, field, fields

BENCH_FORMATS = ("tiled", "packed", "dense", "naive")


@dataclass
class BenchConfig:
    """Configuration dataclass for one benchmark run"""

    # Workload
    op: str = "depolarising"
    p: float = 0.1
    theta: float = 0.7
    gamma: Optional[float] = None  # amplitude damping; falls back to p

    # Sweep
    min_qubits: int = 3
    max_qubits: int = 10
    formats: List[str] = field(default_factory=lambda: ["tiled", "packed", "dense"])
    tile_exp: int = 5

    # Timing protocol
    reps: int = 10
    layers: Union[str, int] = "auto"
    min_interval: float = 0.05  # seconds per timed repetition with auto layers
    max_layers: Optional[int] = None  # cap for auto layers; None = no cap

    # Execution
    threads: Optional[int] = None  # None = all cores
    seed: int = 0
    out: str = "bench.csv"

    def __post_init__(self):
        self.validate()

    def validate(self):
        if isinstance(self.formats, str):
            self.formats = [f for f in self.formats.split(",") if f.strip()]
        self.formats = [f.strip().lower() for f in self.formats]
        unknown = [f for f in self.formats if f not in BENCH_FORMATS]
        if unknown or not self.formats:
            raise ValueError(f"formats must be a non-empty subset of {BENCH_FORMATS}, got {self.formats}")

        if isinstance(self.layers, str) and self.layers.strip().lower() != "auto":
            self.layers = int(self.layers)
        if isinstance(self.layers, str):
            self.layers = "auto"
        elif self.layers < 1:
            raise ValueError(f"layers must be 'auto' or >= 1, got {self.layers}")

        if self.min_qubits < 1:
            raise ValueError(f"min_qubits must be >= 1, got {self.min_qubits}")
        if self.max_qubits < self.min_qubits:
            raise ValueError(f"max_qubits ({self.max_qubits}) < min_qubits ({self.min_qubits})")
        if self.reps < 1:
            raise ValueError(f"reps must be >= 1, got {self.reps}")
        if self.tile_exp < 0:
            raise ValueError(f"tile_exp must be >= 0, got {self.tile_exp}")
        if (self.max_layers is not None and self.max_layers < 1) or self.min_interval < 0:
            raise ValueError("max_layers must be None or >= 1 and min_interval >= 0")
        if self.threads is not None and self.threads < 1:
            raise ValueError(f"threads must be >= 1, got {self.threads}")
        return self

    @property
    def auto_layers(self) -> bool:
        return self.layers == "auto"

    @classmethod
    def from_yaml(cls, yaml_path: str) -> 'BenchConfig':
        """Load configuration from YAML file"""
        with open(yaml_path, 'r') as f:
            yaml_data = yaml.safe_load(f) or {}

        # Filter only valid fields
        valid_fields = {f.name for f in fields(cls)}
        filtered_data = {k: v for k, v in yaml_data.items() if k in valid_fields}

        return cls(**filtered_data)

    def update_from_args(self, args: argparse.Namespace) -> 'BenchConfig':
        """Update configuration with command line arguments (args override config)"""
        for f in fields(self):
            value = getattr(args, f.name, None)
            if value is not None:  # Only override with non-None values
                setattr(self, f.name, value)

        return self.validate()

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def save_yaml(self, yaml_path: str):
        """Save configuration to YAML file"""
        with open(yaml_path, 'w') as f:
            yaml.dump(self.to_dict(), f, default_flow_style=False, indent=2)


def load_config(config_path: Optional[str] = None, args: Optional[argparse.Namespace] = None) -> BenchConfig:
    """
    Load configuration with priority: command line args > YAML config > defaults

    Args:
        config_path: Path to YAML preset
        args: Command line arguments (will override the preset)

    Returns:
        BenchConfig object
    """
    if config_path and Path(config_path).exists():
        print(f"📋 Loading configuration from: {config_path}")
        config = BenchConfig.from_yaml(config_path)
    else:
        if config_path:
            print(f"⚠️  Config file not found: {config_path}")
        print("📋 Using default configuration")
        config = BenchConfig()

    # Override with command line arguments if provided
    if args is not None:
        config = config.update_from_args(args)

    return config
