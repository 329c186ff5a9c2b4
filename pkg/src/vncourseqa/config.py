"""Runtime configuration shared by the query builder and the app layer."""

from __future__ import annotations

from dataclasses import dataclass

# The FROM line of generated queries is cosmetic: evaluation always runs
# against the in-process graph, whatever label is configured here.
DEFAULT_DATASET = "http://localhost/owl_test/vocw_full.owl"


@dataclass(frozen=True)
class QaConfig:
    dataset_label: str = DEFAULT_DATASET
    # anchored exact matching by default; substring matching is opt-in
    substring_match: bool = False
