#!/usr/bin/env python3
"""
Report rendering for repvar: stable JSON and a human-readable text form.
"""

import json
from typing import Dict, List

from ..utils.config import OutputFormat


def to_json(document: Dict) -> str:
    """Structured output with sorted keys; identical documents give identical bytes."""
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _layering(text: str) -> str:
    return text.rstrip(";") or "0"


def _component_lines(index: int, component: Dict) -> List[str]:
    lines = [
        f"component {index}: S = {_layering(component['radical_layering'])}",
        f"  socle layering: {_layering(component['socle_layering'])}",
        f"  route: {component['detection_route']} ({component['certification']})",
    ]
    if component.get("sampled_end_dim") is not None:
        lines.append(f"  sampled dim End: {component['sampled_end_dim']}, "
                     f"{component['indecomposability']}")
    if component.get("kac_summands") is not None:
        summands = " + ".join(str(tuple(v)) for v in component["kac_summands"])
        flag = "" if component.get("kac_verified") else " (unverified)"
        lines.append(f"  Kac summands: {summands}{flag}")
    if component.get("mu") is not None:
        lines.append(f"  mu: {component['mu']}, dense orbit: {component['dense_orbit']}")
    presentation = component.get("presentation")
    if presentation:
        for relation in presentation["relations"]:
            lines.append(f"  relation: {relation['text']}")
    return lines


def render_text(document: Dict) -> str:
    """Plain-text rendering of a report document."""
    result = document["result"]
    command = document["command"]
    lines = [f"{document['tool']} {document['version']} {command} (seed {document['seed']})"]

    if command == "components":
        lines.append(f"components: {result['component_count']} ({result['mode']} pipeline)")
        for i, component in enumerate(result["components"], start=1):
            lines.extend(_component_lines(i, component))
        for item in result["undecided"]:
            lines.append(f"undecided: {_layering(item['radical_layering'])}: {item['reason']}")
    elif command == "canon-decomp":
        decomposition = result["decomposition"]
        parts = " + ".join(f"{tuple(s['vector'])}x{s['multiplicity']}" for s in decomposition["summands"])
        lines.append(f"canonical decomposition: {parts or '0'}")
        if not decomposition["verified"]:
            lines.append("warning: decomposition could not be verified")
        lines.append(f"mu: {result['mu']}, dense orbit: {result['dense_orbit']}")
    elif command == "subdims":
        lines.extend(str(tuple(v)) for v in result["sub_dimension_vectors"])
    elif command == "socle-layering":
        lines.append(result["socle_layering"])
    elif command == "radical-layering-hereditary":
        lines.append(result["radical_layering"])
    elif command == "generic-module":
        lines.extend(result["relations"])
        params = ", ".join(f"{k}={v}" for k, v in result["specialization"]["parameters"].items())
        lines.append(f"specialization over GF({result['specialization']['representation']['field_order']}): {params}")
    elif command == "gamma":
        lines.append(f"gamma: {result['gamma']} over GF({result['field_order']})")
        lines.extend(f"  {w}" for w in result["witnesses"])
    elif command == "skeleta":
        lines.append(f"skeleta: {result['skeleton_count']}")
        for sk in result["skeleta"]:
            lines.append("  " + ", ".join(sk["paths"]))
    return "\n".join(lines) + "\n"


def render(document: Dict, output_format: OutputFormat) -> str:
    if output_format == OutputFormat.STRUCTURED:
        return to_json(document)
    return render_text(document)
