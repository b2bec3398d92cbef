#!/usr/bin/env python3
"""
Job runner for repvar.

Turns a validated ``JobConfig`` into a report document. Documents are plain
dictionaries holding only deterministic content, so the same job always
serializes to the same bytes.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Dict, Optional, Tuple

from ..core.components import components
from ..core.filtrations import gamma_witnesses
from ..core.hereditary import (
    canonical_decomposition, mu_from_decomposition, sub_dimension_vectors,
)
from ..core.layers import (
    SemisimpleSequence, generic_radical_layering_hereditary, generic_socle_layering,
    parse_layering,
)
from ..core.quiver import DimVector, TruncatedAlgebra
from ..core.skeleta import enumerate_skeleta, generic_presentation, specialize
from ..utils.config import Config, OutputFormat, PipelineMode
from ..utils.seeding import stable_hash
from ..utils.settings import OracleSettings
from .algebra_file import load_algebra


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_UNDECIDED = 2


class JobError(Exception):
    """Exception raised for invalid job configurations."""
    pass


@dataclass
class JobConfig:
    """One command invocation with all oracle parameters resolved."""
    command: str
    algebra_path: Path
    dim: Optional[DimVector] = None
    layering: Optional[str] = None
    mode: PipelineMode = PipelineMode.AUTO
    output_format: OutputFormat = OutputFormat.TEXT
    settings: OracleSettings = field(default_factory=OracleSettings)
    enrich: bool = True


def parse_dim(text: str) -> DimVector:
    """Comma-separated integers in vertex order."""
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise JobError(f"Dimension vector must be comma-separated integers, got '{text}'") from None


def _require_dim(job: JobConfig, a: TruncatedAlgebra) -> DimVector:
    if job.dim is None:
        raise JobError(f"Command '{job.command}' needs --dim")
    return a.quiver.check_dim(job.dim)


def _require_layering(job: JobConfig, a: TruncatedAlgebra) -> SemisimpleSequence:
    if job.layering is None:
        raise JobError(f"Command '{job.command}' needs --layering")
    return parse_layering(job.layering, a.n, a.loewy_bound)


def _header(job: JobConfig, a: TruncatedAlgebra) -> Dict:
    values = job.settings.get_all()
    return {
        "tool": Config.APP_NAME,
        "version": Config.APP_VERSION,
        "command": job.command,
        "seed": values["seed"],
        "primes": {
            "prime": values["prime"],
            "hereditary_prime": values["hereditary_prime"],
            "small_primes": values["small_primes"],
        },
        "caps": {
            "sequence_cap": values["sequence_cap"],
            "filtration_cap": values["filtration_cap"],
        },
        "algebra": {
            "vertices": a.n,
            "arrows": [[x.name, x.source, x.target] for x in a.quiver.arrows],
            "loewy_bound": a.loewy_bound,
        },
    }


def _run_components(job: JobConfig, a: TruncatedAlgebra) -> Tuple[Dict, int]:
    d = _require_dim(job, a)
    result = components(a, d, job.settings, job.mode, job.enrich)
    body = {"dim": list(d)}
    body.update(result.to_dict())
    code = EXIT_UNDECIDED if result.undecided else EXIT_OK
    return body, code


def _run_canon_decomp(job: JobConfig, a: TruncatedAlgebra) -> Tuple[Dict, int]:
    d = _require_dim(job, a)
    v = job.settings.get_all()
    decomposition = canonical_decomposition(a.quiver, d, v["samples"], v["hereditary_prime"],
                                            v["seed"], v["decomposition_rounds"])
    mu = mu_from_decomposition(a.quiver, decomposition)
    body = {"dim": list(d), "decomposition": decomposition.to_dict(), "mu": mu, "dense_orbit": mu == 0}
    return body, EXIT_OK if decomposition.verified else EXIT_UNDECIDED


def _run_subdims(job: JobConfig, a: TruncatedAlgebra) -> Tuple[Dict, int]:
    d = _require_dim(job, a)
    v = job.settings.get_all()
    subs = sub_dimension_vectors(a.quiver, d, v["samples"], v["hereditary_prime"], v["seed"])
    return {"dim": list(d), "sub_dimension_vectors": [list(x) for x in sorted(subs)]}, EXIT_OK


def _run_socle_layering(job: JobConfig, a: TruncatedAlgebra) -> Tuple[Dict, int]:
    s = _require_layering(job, a)
    return {"layering": str(s), "socle_layering": str(generic_socle_layering(s, a))}, EXIT_OK


def _run_radical_layering(job: JobConfig, a: TruncatedAlgebra) -> Tuple[Dict, int]:
    d = _require_dim(job, a)
    return {"dim": list(d), "radical_layering": str(generic_radical_layering_hereditary(a.quiver, d))}, EXIT_OK


def _run_generic_module(job: JobConfig, a: TruncatedAlgebra) -> Tuple[Dict, int]:
    s = _require_layering(job, a)
    v = job.settings.get_all()
    gp = generic_presentation(s, a)
    rep = specialize(gp, a, p=v["prime"], seed=v["seed"], retries=v["specialization_retries"])
    body = {
        "layering": str(s),
        "presentation": gp.to_dict(),
        "relations": gp.render(),
        "specialization": {
            "parameters": dict(sorted(rep.parameters.items(), key=lambda kv: int(kv[0][1:]))),
            "representation": rep.to_dict(),
        },
    }
    return body, EXIT_OK


def _run_gamma(job: JobConfig, a: TruncatedAlgebra) -> Tuple[Dict, int]:
    s = _require_layering(job, a)
    v = job.settings.get_all()
    prime = v["small_primes"][0]
    gp = generic_presentation(s, a)
    rep = specialize(gp, a, p=prime, seed=stable_hash((v["seed"], prime)),
                     retries=v["specialization_retries"])
    result = gamma_witnesses(rep, v["filtration_cap"])
    body = {
        "layering": str(s),
        "field_order": prime,
        "gamma": result.count,
        "witnesses": [str(w) for w in result.witnesses],
        "subspaces_visited": result.visited,
    }
    return body, EXIT_OK


def _run_skeleta(job: JobConfig, a: TruncatedAlgebra) -> Tuple[Dict, int]:
    s = _require_layering(job, a)
    skeleta = enumerate_skeleta(s, a)
    return {"layering": str(s), "skeleton_count": len(skeleta),
            "skeleta": [sk.to_dict() for sk in skeleta]}, EXIT_OK


COMMANDS: Dict[str, Callable[[JobConfig, TruncatedAlgebra], Tuple[Dict, int]]] = {
    "components": _run_components,
    "canon-decomp": _run_canon_decomp,
    "subdims": _run_subdims,
    "socle-layering": _run_socle_layering,
    "radical-layering-hereditary": _run_radical_layering,
    "generic-module": _run_generic_module,
    "gamma": _run_gamma,
    "skeleta": _run_skeleta,
}


def resolve_algebra_path(path: Path) -> Path:
    """The given path, or the bundled fixture of the same name when no such file exists."""
    path = Path(path)
    if path.exists():
        return path
    bundled = Config.fixture(path.stem)
    return bundled if bundled.exists() else path


def run(job: JobConfig) -> Tuple[Dict, int]:
    """
    Execute a job.

    Returns:
        (document, exit code); exit code 2 flags undecided or unverified results

    Raises:
        JobError: Unknown command or missing arguments
        AlgebraParseError, QuiverError, LayeringError, ...: From the pipelines
    """
    if job.command not in COMMANDS:
        raise JobError(f"Unknown command '{job.command}'")
    a = load_algebra(resolve_algebra_path(job.algebra_path))
    logger.info(f"Running {job.command} on {job.algebra_path}")
    document = _header(job, a)
    body, code = COMMANDS[job.command](job, a)
    document["result"] = body
    document["exit_code"] = code
    return document, code
