"""Stored presentations, named classes, and the verification registry."""

from .checks import CheckReport, known_checks, run_all, run_check
from .keel import build_keel, keel_rank_degree_one, wdvv_mu2_image
from .replay import ReplayResult, replay_localization
from .spaces import get_presentation, known_space_ids, space

__all__ = [
    "CheckReport",
    "known_checks",
    "run_all",
    "run_check",
    "build_keel",
    "keel_rank_degree_one",
    "wdvv_mu2_image",
    "ReplayResult",
    "replay_localization",
    "get_presentation",
    "known_space_ids",
    "space",
]
