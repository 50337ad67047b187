"""
Run manifests.

Every command that writes files records a RunManifest: the command, its
configuration, the seed, the package version, timestamps and the output
paths. Manifests are appended as JSON lines to
``<out_dir>/manifests.jsonl`` and never rewritten; an output path may be
claimed by one manifest only.
"""

import os
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from .logging import get_logger

MANIFEST_FILE = "manifests.jsonl"


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


class RunManifest(BaseModel):
    """Record making a command's outputs re-derivable."""

    command: str = Field(description="Subcommand name")
    config: Dict[str, Any] = Field(
        default_factory=dict, description="Effective configuration as JSON"
    )
    seed: Optional[int] = Field(default=None, description="Root seed of the command")
    version: str = Field(description="mmident version that produced the outputs")
    started_at: str = Field(default_factory=_now)
    finished_at: Optional[str] = None
    outputs: List[str] = Field(
        default_factory=list, description="Output paths, relative to the store"
    )


class ManifestStore:
    """Append-only manifest log for one output directory."""

    def __init__(self, out_dir: str):
        self.out_dir = out_dir
        self.path = os.path.join(out_dir, MANIFEST_FILE)
        self.logger = get_logger("core.manifest")

    def _relative(self, path: str) -> str:
        return os.path.relpath(os.path.abspath(path), os.path.abspath(self.out_dir))

    def list_manifests(self) -> List[RunManifest]:
        if not os.path.exists(self.path):
            return []
        manifests = []
        with open(self.path, "r", encoding="utf-8") as f:
            for line_number, line in enumerate(f, start=1):
                if not line.strip():
                    continue
                try:
                    manifests.append(RunManifest.model_validate_json(line))
                except ValueError as e:
                    raise ValueError(
                        f"Invalid manifest at {self.path}:{line_number}: {e}"
                    )
        return manifests

    def claimed_outputs(self) -> Dict[str, RunManifest]:
        return {
            output: manifest
            for manifest in self.list_manifests()
            for output in manifest.outputs
        }

    def find_by_output(self, path: str) -> RunManifest:
        """The manifest that produced ``path``.

        Raises:
            ValueError: If no manifest references the path
        """
        relative = self._relative(path)
        claimed = self.claimed_outputs()
        if relative not in claimed:
            raise ValueError(f"Output '{relative}' not found in {self.path}")
        return claimed[relative]

    def check_available(self, outputs: List[str]) -> None:
        """Raise if any of ``outputs`` is already claimed by a manifest."""
        claimed = self.claimed_outputs()
        for output in outputs:
            relative = self._relative(output)
            if relative in claimed:
                raise ValueError(
                    f"Output '{relative}' already exists in manifest of"
                    f" '{claimed[relative].command}' ({claimed[relative].started_at})"
                )

    def append(self, manifest: RunManifest) -> RunManifest:
        """Register a finished command's outputs.

        Paths are stored relative to the output directory.
        """
        relative = [self._relative(p) for p in manifest.outputs]
        if len(set(relative)) != len(relative):
            raise ValueError(f"Duplicate output paths in manifest: {relative}")
        self.check_available(manifest.outputs)

        record = manifest.model_copy(
            update={"outputs": relative, "finished_at": manifest.finished_at or _now()}
        )
        os.makedirs(self.out_dir, exist_ok=True)
        with open(self.path, "a", encoding="utf-8") as f:
            f.write(record.model_dump_json() + "\n")
        self.logger.info(
            f"Recorded {record.command} manifest with {len(relative)} outputs"
        )
        return record
