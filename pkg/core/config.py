"""
Configuration: the comparison tolerance and simulation defaults
"""
import json
import os
from dataclasses import dataclass
from typing import Any, Dict

try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass

from .errors import ScenarioError

TOLERANCE = 1e-9


@dataclass
class SimulationConfig:
    """Defaults applied to scenarios that leave a field unset"""
    scheduler: str = "fair"
    seed: int = 0
    horizon_factor: int = 50
    initial_range: int = 16
    wave_patience: int = 8
    cycle_patience: int = 16
    output_dir: str = "reports"

    @classmethod
    def from_env(cls) -> "SimulationConfig":
        """Create config from MDST_* environment variables"""
        return cls(
            scheduler=os.getenv("MDST_SCHEDULER", "fair"),
            seed=int(os.getenv("MDST_SEED", "0")),
            horizon_factor=int(os.getenv("MDST_HORIZON_FACTOR", "50")),
            initial_range=int(os.getenv("MDST_INITIAL_RANGE", "16")),
            wave_patience=int(os.getenv("MDST_WAVE_PATIENCE", "8")),
            cycle_patience=int(os.getenv("MDST_CYCLE_PATIENCE", "16")),
            output_dir=os.getenv("MDST_OUTPUT_DIR", "reports"),
        )

    def horizon_for(self, n: int, hop_diameter: int) -> int:
        """Default horizon: factor * (n + hop_diameter^2) time units"""
        return self.horizon_factor * (n + hop_diameter * hop_diameter)


class ScenarioPresets:
    """Named scenario fragments for common campaigns"""

    CLEAN = {"protocol": "composed", "init": "clean", "scheduler": "fair"}
    ARBITRARY = {"protocol": "composed", "init": {"arbitrary": 1}, "scheduler": "fair"}
    ADVERSARIAL = {"protocol": "composed", "init": {"arbitrary": 1}, "scheduler": "adversarial"}

    @classmethod
    def get_preset(cls, name: str) -> Dict[str, Any]:
        presets = {
            "clean": cls.CLEAN,
            "arbitrary": cls.ARBITRARY,
            "adversarial": cls.ADVERSARIAL,
        }
        if name.lower() not in presets:
            available = ", ".join(presets.keys())
            raise ScenarioError(f"Unknown preset '{name}'. Available presets: {available}")
        return dict(presets[name.lower()])

    @classmethod
    def list_presets(cls) -> Dict[str, str]:
        return {
            "clean": "Composed stack from clean states, fair scheduler",
            "arbitrary": "Composed stack from random states, fair scheduler",
            "adversarial": "Composed stack from random states, adversarial scheduler",
        }


def load_json_file(file_path: str) -> Dict[str, Any]:
    """Load a JSON object, reporting problems as ScenarioError"""
    try:
        with open(file_path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except FileNotFoundError:
        raise ScenarioError(f"File not found: {file_path}")
    except json.JSONDecodeError as e:
        raise ScenarioError(f"Invalid JSON in {file_path}: {e}")
    if not isinstance(data, dict):
        raise ScenarioError(f"Expected a JSON object in {file_path}")
    return data


def save_json_file(data: Dict[str, Any], file_path: str) -> None:
    directory = os.path.dirname(file_path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(file_path, 'w', encoding='utf-8') as f:
        json.dump(data, f, indent=2, sort_keys=True)
        f.write("\n")
