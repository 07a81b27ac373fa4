"""On-disk formats: substrate/workload JSON, trace NDJSON, metric CSV.

Field names are pinned for cross-implementation compatibility:

    substrate   one JSON document, one node/link object per line;
                nodes carry (id, domain, cpu, ssl, ssd), links (u, v, bw);
                `cpu` and `bw` are capacities - files describe fresh networks
    workload    newline-delimited JSON: a header {"horizon", "vnr_count"}
                followed by one request per line with (id, arrival_time,
                lifetime, nodes[(id, cpu, vsd, vsl, cd)], links[(u, v, bw)])
    trace       newline-delimited JSON, one event per line with
                (time, kind, vnr_id, outcome, revenue, cost)
    window CSV  header t_start,t_end,arrived,accepted,acceptance,avg_revenue,
                avg_cost,rc_ratio; no-sample cells are left empty

All writers go through an atomic replace so a crashed run never leaves a
truncated file behind, and all output is byte-deterministic.
"""

from __future__ import annotations

import dataclasses
import json
import os
import tempfile
from pathlib import Path

from .errors import InvalidConfig
from .generate import GeneratorConfig
from .model import (
    SubstrateLink,
    SubstrateNetwork,
    SubstrateNode,
    VirtualLink,
    VirtualNetworkRequest,
    VirtualNode,
    compute_boundary_hops,
)

WINDOW_CSV_HEADER = "t_start,t_end,arrived,accepted,acceptance,avg_revenue,avg_cost,rc_ratio"
CUMULATIVE_CSV_HEADER = "t_end,arrived,accepted,acceptance,revenue,cost,rc_ratio"


def atomic_write_text(path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


# -- substrate -----------------------------------------------------------

def save_substrate(net: SubstrateNetwork, path) -> None:
    lines = ["{", f'"domain_count": {net.domain_count},', '"nodes": [']
    node_lines = []
    for nid in sorted(net.nodes):
        n = net.nodes[nid]
        node_lines.append(json.dumps({"id": n.id, "domain": n.domain, "cpu": n.cpu_capacity,
                                      "ssl": n.ssl, "ssd": n.ssd}))
    lines.append(",\n".join(node_lines))
    lines.append('],')
    lines.append('"links": [')
    link_lines = []
    for k in sorted(net.links):
        l = net.links[k]
        link_lines.append(json.dumps({"u": l.u, "v": l.v, "bw": l.bw_capacity}))
    lines.append(",\n".join(link_lines))
    lines.append(']')
    lines.append("}")
    atomic_write_text(path, "\n".join(lines) + "\n")


def load_substrate(path) -> SubstrateNetwork:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidConfig(f"cannot read substrate file {path}: {exc}") from exc
    try:
        nodes = [SubstrateNode(n["id"], n["domain"], n["cpu"], n["cpu"], n["ssl"], n["ssd"])
                 for n in doc["nodes"]]
        links = [SubstrateLink(l["u"], l["v"], l["bw"], l["bw"]) for l in doc["links"]]
        net = SubstrateNetwork(doc["domain_count"], nodes, links)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidConfig(f"malformed substrate file {path}: {exc}") from exc
    if not net.domains_connected():
        raise InvalidConfig(f"substrate file {path}: some domain is not connected")
    compute_boundary_hops(net)
    return net


# -- workload ------------------------------------------------------------

def save_workload(vnrs, horizon: float, path) -> None:
    lines = [json.dumps({"horizon": horizon, "vnr_count": len(vnrs)})]
    for vnr in vnrs:
        lines.append(json.dumps({
            "id": vnr.id,
            "arrival_time": vnr.arrival_time,
            "lifetime": vnr.lifetime,
            "nodes": [{"id": n.id, "cpu": n.cpu_demand, "vsd": n.vsd, "vsl": n.vsl,
                       "cd": sorted(n.cd)} for n in
                      (vnr.nodes[i] for i in sorted(vnr.nodes))],
            "links": [{"u": k[0], "v": k[1], "bw": vnr.links[k].bw_demand}
                      for k in sorted(vnr.links)],
        }))
    atomic_write_text(path, "\n".join(lines) + "\n")


def load_workload(path) -> tuple[list[VirtualNetworkRequest], float]:
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise InvalidConfig(f"cannot read workload file {path}: {exc}") from exc
    if not lines:
        raise InvalidConfig(f"workload file {path} is empty")
    try:
        header = json.loads(lines[0])
        horizon = float(header["horizon"])
        vnrs = []
        for line in lines[1:]:
            if not line.strip():
                continue
            doc = json.loads(line)
            nodes = [VirtualNode(n["id"], n["cpu"], n["vsd"], n["vsl"], frozenset(n["cd"]))
                     for n in doc["nodes"]]
            links = [VirtualLink(l["u"], l["v"], l["bw"]) for l in doc["links"]]
            vnrs.append(VirtualNetworkRequest(doc["id"], nodes, links,
                                              doc["arrival_time"], doc["lifetime"]))
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise InvalidConfig(f"malformed workload file {path}: {exc}") from exc
    return vnrs, horizon


# -- generator config ----------------------------------------------------

_RANGE_FIELDS = {"substrate_cpu_range", "substrate_bw_range", "security_range",
                 "vnr_node_range", "vnr_cpu_range", "vnr_bw_range", "cd_size_range"}


def config_to_dict(cfg: GeneratorConfig) -> dict:
    out = dataclasses.asdict(cfg)
    for name in _RANGE_FIELDS:
        if out[name] is not None:
            out[name] = list(out[name])
    return out


def config_from_dict(doc: dict) -> GeneratorConfig:
    known = set(GeneratorConfig.field_names())
    kwargs = {}
    for key, value in doc.items():
        if key not in known:
            raise InvalidConfig(f"unknown config key {key!r}")
        if key in _RANGE_FIELDS and value is not None:
            if not (isinstance(value, (list, tuple)) and len(value) == 2):
                raise InvalidConfig(f"config key {key!r} must be a [min, max] pair")
            value = (value[0], value[1])
        kwargs[key] = value
    cfg = GeneratorConfig(**kwargs)
    cfg.validate()
    return cfg


def load_config(path) -> GeneratorConfig:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidConfig(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise InvalidConfig(f"config file {path} must hold a JSON object")
    return config_from_dict(doc)


def save_config(cfg: GeneratorConfig, path) -> None:
    atomic_write_text(path, json.dumps(config_to_dict(cfg), indent=2) + "\n")


# -- traces and metric series --------------------------------------------

def write_trace(trace, path) -> None:
    lines = []
    for rec in trace.records:
        lines.append(json.dumps({"time": rec.time, "kind": rec.kind, "vnr_id": rec.vnr_id,
                                 "outcome": rec.outcome, "revenue": rec.revenue,
                                 "cost": rec.cost}))
    atomic_write_text(path, "\n".join(lines) + ("\n" if lines else ""))


def write_window_csv(rows, path) -> None:
    lines = [WINDOW_CSV_HEADER]
    for r in rows:
        lines.append(",".join([_cell(r.window.t_start), _cell(r.window.t_end),
                               _cell(r.window.arrived), _cell(r.window.accepted),
                               _cell(r.acceptance), _cell(r.avg_revenue),
                               _cell(r.avg_cost), _cell(r.rc_ratio)]))
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_cumulative_csv(rows, path) -> None:
    lines = [CUMULATIVE_CSV_HEADER]
    for r in rows:
        lines.append(",".join([_cell(r.t_end), _cell(r.arrived), _cell(r.accepted),
                               _cell(r.acceptance), _cell(r.revenue), _cell(r.cost),
                               _cell(r.rc_ratio)]))
    atomic_write_text(path, "\n".join(lines) + "\n")
