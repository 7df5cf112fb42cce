"""
Recall gained by the relational stage under the shipped synthetic config.

A perturbed 2000 x 2000 pair (80% overlap, 20% missing values, 20%
corrupted records) is linked with ``config/synthetic.example.cfg`` in
full mode and attribute-only mode over the same signature databases.
"""

from __future__ import annotations

from pathlib import Path

import pytest

from src.config.loader import parse_config
from src.config.settings import Config
from src.evaluation.metrics import precision_recall
from src.matching.matcher import match
from src.model.matches import MatchStage
from src.pipeline.steps import LinkagePipeline
from src.synthgen.perturb import perturbed_pair

pytestmark = [pytest.mark.functional, pytest.mark.slow, pytest.mark.timeout(600)]

CONFIG_PATH = Path(__file__).resolve().parents[2] / "config" / "synthetic.example.cfg"
MAX_PRECISION_LOSS = 0.02


# ---------------------------------------------------------------------------
# Fixtures
# ---------------------------------------------------------------------------


@pytest.fixture(scope="module")
def shipped_config() -> Config:
    return parse_config(CONFIG_PATH)


class TestRelationalGain:
    """Full mode against attribute-only mode on synthetic households."""

    def test_config_links_households(self, shipped_config: Config) -> None:
        """Test that the shipped config relates records through the household id."""
        assert shipped_config.relationships == (("household_id",),)
        assert "neighbour_signatures" in shipped_config.features
        assert 0.2 < shipped_config.beta < 1.0

    @pytest.mark.parametrize("seed", [3, 17])
    def test_relational_stage_adds_recall(self, shipped_config: Config, seed: int) -> None:
        """Test that full mode finds more true links at a bounded precision cost."""
        db_a, db_b, truth = perturbed_pair(2000, 2000, 0.8, seed=seed)
        run = LinkagePipeline(shipped_config).run(db_a, db_b)
        assert run.combinations
        assert all(len(c.members) == 2 for c in run.combinations)

        attribute_only = match(
            run.signatures_a,
            run.signatures_b,
            shipped_config.with_overrides(attribute_only=True),
        )
        full = precision_recall(run.matches, truth)
        baseline = precision_recall(attribute_only, truth)

        assert run.matches.by_stage(MatchStage.RELATIONAL).id_pairs() & truth.links
        assert full.recall > baseline.recall
        assert full.precision >= baseline.precision - MAX_PRECISION_LOSS
