"""HTTP/JSON service over an in-memory catalog of graphs.

Readers work against immutable snapshots: an upload builds a fresh
document dict and swaps it in whole, so a request that already holds a
document never observes partial state.  Derived views (filters, metrics,
layouts) are cached under keys that include the catalog generation, which
makes invalidation automatic when a graph is replaced under the same
name.

Responses that take longer than the latency budget turn into jobs: the
request gets 202 with a poll URL, and the same deterministic job id is
handed to every identical request so the work happens once.
"""

from __future__ import annotations

import hashlib
import json
import threading
from collections import OrderedDict
from concurrent.futures import Future, ThreadPoolExecutor
from concurrent.futures import TimeoutError as FutureTimeout
from dataclasses import dataclass

from fastapi import FastAPI, Request, Response

from . import serialize
from .filters import component_view, k_core, max_dis, min_dis, min_dis_top
from .graph import Graph, SubgraphResult
from .io import FORMATS, ParseError, parse_graph
from .layout import circular_layout, force_layout
from .metrics import degree_distribution, metrics_report
from .sweep import attack_curve, dis_sweep, tail_start

__all__ = ["Catalog", "GraphDocument", "ApiError", "create_app", "serve"]

_NAME_OK = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789._-")


@dataclass(frozen=True)
class GraphDocument:
    name: str
    graph: Graph
    source_format: str


class Catalog:
    """Named graphs plus an LRU cache of derived response bodies.

    Cache keys embed the catalog generation, so replacing a graph under
    the same name strands the old entries; they age out by LRU instead of
    being hunted down.  Builders run outside the lock: two racing
    requests may both compute a value, but entries are pure functions of
    their key so the duplicates are identical.
    """

    def __init__(self, cache_size: int = 64):
        if cache_size < 1:
            raise ValueError(f"cache_size must be >= 1, got {cache_size}")
        self._docs: dict[str, GraphDocument] = {}
        self._lock = threading.Lock()
        self._cache: OrderedDict[tuple, bytes] = OrderedDict()
        self._cache_size = cache_size
        self._generation = 0

    def add(self, name: str, graph: Graph, source_format: str = "edge-list") -> GraphDocument:
        doc = GraphDocument(name, graph, source_format)
        with self._lock:
            docs = dict(self._docs)
            docs[name] = doc
            self._docs = docs
            self._generation += 1
        return doc

    def get(self, name: str) -> GraphDocument | None:
        return self._docs.get(name)

    def entries(self) -> list[tuple[str, Graph]]:
        docs = self._docs
        return [(d.name, d.graph) for d in sorted(docs.values(), key=lambda d: d.name)]

    @property
    def generation(self) -> int:
        return self._generation

    def derived(self, key: tuple, builder) -> bytes:
        with self._lock:
            if key in self._cache:
                self._cache.move_to_end(key)
                return self._cache[key]
        value = builder()
        with self._lock:
            self._cache[key] = value
            self._cache.move_to_end(key)
            while len(self._cache) > self._cache_size:
                self._cache.popitem(last=False)
        return value


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message


def _bad(message: str) -> ApiError:
    return ApiError(400, "bad_request", message)


def _int_param(params, name, default=None, required=False, minimum=None):
    raw = params.get(name)
    if raw is None:
        if required:
            raise _bad(f"missing required parameter {name!r}")
        return default
    try:
        value = int(raw)
    except ValueError:
        raise _bad(f"parameter {name!r} must be an integer, got {raw!r}") from None
    if minimum is not None and value < minimum:
        raise _bad(f"parameter {name!r} must be >= {minimum}, got {value}")
    return value


def _float_param(params, name, default=None):
    raw = params.get(name)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise _bad(f"parameter {name!r} must be a number, got {raw!r}") from None


def _bool_param(params, name, default=False):
    raw = params.get(name)
    if raw is None:
        return default
    low = raw.lower()
    if low in ("true", "1", "yes"):
        return True
    if low in ("false", "0", "no"):
        return False
    raise _bad(f"parameter {name!r} must be true or false, got {raw!r}")


def _choice_param(params, name, choices, default=None, required=False):
    raw = params.get(name)
    if raw is None:
        if required:
            raise _bad(f"missing required parameter {name!r}")
        return default
    if raw not in choices:
        raise _bad(f"parameter {name!r} must be one of {', '.join(choices)}, got {raw!r}")
    return raw


def create_app(
    catalog: Catalog | None = None,
    *,
    job_budget: float = 2.0,
    workers: int = 4,
) -> FastAPI:
    """Build the FastAPI app.  job_budget is the seconds a request may
    take before it is answered with 202 and a poll URL; tests shrink it
    to force the job path."""
    if catalog is None:
        catalog = Catalog()
    app = FastAPI(openapi_url=None, docs_url=None, redoc_url=None)
    app.state.catalog = catalog
    executor = ThreadPoolExecutor(max_workers=workers)
    jobs: OrderedDict[str, Future] = OrderedDict()
    jobs_lock = threading.Lock()

    def respond(payload: bytes, status: int = 200, media: str = "application/json") -> Response:
        return Response(
            content=payload,
            status_code=status,
            media_type=media,
            headers={"X-Schema-Version": str(serialize.SCHEMA_VERSION)},
        )

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, exc: ApiError) -> Response:
        return respond(serialize.error_payload(exc.code, exc.message), exc.status)

    def doc_of(name: str) -> GraphDocument:
        doc = catalog.get(name)
        if doc is None:
            raise ApiError(404, "not_found", f"no graph named {name!r}")
        return doc

    def gated(key: tuple, builder) -> Response:
        """Serve from cache or compute; long computations become jobs."""
        job_id = hashlib.sha256(repr(key).encode("utf-8")).hexdigest()[:16]
        with jobs_lock:
            fut = jobs.get(job_id)
            if fut is None:
                fut = executor.submit(catalog.derived, key, builder)
                jobs[job_id] = fut
                while len(jobs) > 256:
                    oldest = next(iter(jobs))
                    if jobs[oldest].done():
                        del jobs[oldest]
                    else:
                        break
        try:
            payload = fut.result(timeout=job_budget)
        except FutureTimeout:
            body = serialize.dumps(
                {
                    "schema_version": serialize.SCHEMA_VERSION,
                    "status": "pending",
                    "job": job_id,
                    "poll": f"/jobs/{job_id}",
                }
            )
            return respond(body, 202)
        return respond(payload)

    @app.get("/jobs/{job_id}")
    def get_job(job_id: str) -> Response:
        with jobs_lock:
            fut = jobs.get(job_id)
        if fut is None:
            raise ApiError(404, "not_found", f"no job {job_id!r}")
        if not fut.done():
            body = serialize.dumps(
                {
                    "schema_version": serialize.SCHEMA_VERSION,
                    "status": "pending",
                    "job": job_id,
                }
            )
            return respond(body)
        payload = fut.result()
        body = serialize.dumps(
            {
                "schema_version": serialize.SCHEMA_VERSION,
                "status": "done",
                "job": job_id,
                "result": json.loads(payload),
            }
        )
        return respond(body)

    @app.get("/graphs")
    def list_graphs() -> Response:
        return respond(serialize.listing_payload(catalog.entries()))

    @app.post("/graphs")
    async def upload_graph(request: Request) -> Response:
        params = request.query_params
        name = params.get("name")
        if not name:
            raise _bad("missing required parameter 'name'")
        if len(name) > 64 or not set(name) <= _NAME_OK:
            raise _bad(f"graph name {name!r} must be 1-64 chars of [A-Za-z0-9._-]")
        fmt = _choice_param(params, "format", FORMATS, default="edge-list")
        body = await request.body()
        try:
            graph = parse_graph(body, fmt)
        except ParseError as exc:
            raise ApiError(422, "unparsable", str(exc)) from None
        catalog.add(name, graph, fmt)
        return respond(serialize.upload_payload(name, fmt, graph), 201)

    @app.get("/graphs/{name}")
    def get_graph(name: str, request: Request) -> Response:
        doc = doc_of(name)
        component = _int_param(request.query_params, "component", minimum=0)
        key = ("graph", catalog.generation, name, component)

        def build() -> bytes:
            graph, result = _slice_component(doc.graph, None, component)
            return serialize.graph_payload(name, graph, result, component=component)

        return gated(key, build)

    @app.get("/graphs/{name}/metrics")
    def get_metrics(name: str) -> Response:
        doc = doc_of(name)
        key = ("metrics", catalog.generation, name)

        def build() -> bytes:
            return serialize.metrics_payload(name, metrics_report(doc.graph))

        return gated(key, build)

    @app.get("/graphs/{name}/degree-distribution")
    def get_degree(name: str) -> Response:
        doc = doc_of(name)
        key = ("degree", catalog.generation, name)

        def build() -> bytes:
            return serialize.degree_payload(name, degree_distribution(doc.graph))

        return gated(key, build)

    @app.get("/graphs/{name}/dis")
    def get_dis(name: str, request: Request) -> Response:
        params = request.query_params
        doc = doc_of(name)
        mode = _choice_param(params, "mode", ("max", "min", "kcore"), required=True)
        d = _int_param(params, "d", required=True, minimum=0)
        include = _choice_param(params, "include", ("metrics",))
        component = _int_param(params, "component", minimum=0)
        key = ("dis", catalog.generation, name, mode, d, include, component)

        def build() -> bytes:
            result = _apply_filter(doc.graph, mode, d)
            graph, result = _slice_component(result.graph, result, component)
            metrics = metrics_report(graph) if include == "metrics" else None
            return serialize.graph_payload(
                name, graph, result, metrics=metrics, component=component
            )

        return gated(key, build)

    @app.get("/graphs/{name}/dis-top")
    def get_dis_top(name: str, request: Request) -> Response:
        params = request.query_params
        doc = doc_of(name)
        k = _int_param(params, "k")
        fraction = _float_param(params, "fraction")
        if (k is None) == (fraction is None):
            raise _bad("exactly one of 'k' and 'fraction' is required")
        include = _choice_param(params, "include", ("metrics",))
        component = _int_param(params, "component", minimum=0)
        key = ("dis-top", catalog.generation, name, k, fraction, include, component)

        def build() -> bytes:
            result = _value_checked(min_dis_top, doc.graph, k=k, fraction=fraction)
            graph, result = _slice_component(result.graph, result, component)
            metrics = metrics_report(graph) if include == "metrics" else None
            return serialize.graph_payload(
                name, graph, result, metrics=metrics, component=component
            )

        return gated(key, build)

    @app.get("/graphs/{name}/layout")
    def get_layout(name: str, request: Request) -> Response:
        params = request.query_params
        doc = doc_of(name)
        algorithm = _choice_param(params, "algorithm", ("force", "circular"), default="force")
        seed = _int_param(params, "seed", default=0)
        iterations = _int_param(params, "iterations", default=50, minimum=1)
        order = _choice_param(params, "order", ("degree-desc", "index"), default="degree-desc")
        mode = _choice_param(params, "mode", ("max", "min", "kcore", "top"))
        d = _int_param(params, "d", minimum=0)
        k = _int_param(params, "k", minimum=1)
        if mode == "top":
            if k is None or d is not None:
                raise _bad("'mode=top' takes 'k' and no 'd'")
        elif (mode is None) != (d is None):
            raise _bad("'mode' and 'd' must be given together")
        elif k is not None:
            raise _bad("'k' is only valid with mode=top")
        component = _int_param(params, "component", minimum=0)
        key = (
            "layout", catalog.generation, name,
            algorithm, seed, iterations, order, mode, d, k, component,
        )

        def build() -> bytes:
            if mode == "top":
                result = _value_checked(min_dis_top, doc.graph, k=k)
            elif mode is not None:
                result = _apply_filter(doc.graph, mode, d)
            else:
                result = None
            base = result.graph if result is not None else doc.graph
            graph, result = _slice_component(base, result, component)
            if algorithm == "force":
                layout = force_layout(graph, seed=seed, iterations=iterations)
            else:
                layout = circular_layout(graph, order=order)
            return serialize.graph_payload(
                name, graph, result, layout=layout, component=component
            )

        return gated(key, build)

    @app.get("/graphs/{name}/sweep")
    def get_sweep(name: str, request: Request) -> Response:
        params = request.query_params
        doc = doc_of(name)
        mode = _choice_param(params, "mode", ("max", "min"), required=True)
        dmin = _int_param(params, "dmin", default=0, minimum=0)
        dmax = _int_param(params, "dmax")
        apl = _bool_param(params, "apl")
        fmt = _choice_param(params, "format", ("json", "csv"), default="json")
        if fmt == "csv":
            profile = _value_checked(
                dis_sweep, doc.graph, mode, dmin, dmax, include_apl=apl
            )
            return respond(serialize.sweep_csv(profile), media="text/csv")
        key = ("sweep", catalog.generation, name, mode, dmin, dmax, apl)

        def build() -> bytes:
            profile = _value_checked(
                dis_sweep, doc.graph, mode, dmin, dmax, include_apl=apl
            )
            return serialize.sweep_payload(name, profile)

        return gated(key, build)

    @app.get("/graphs/{name}/attack")
    def get_attack(name: str, request: Request) -> Response:
        params = request.query_params
        doc = doc_of(name)
        order = _choice_param(params, "order", ("targeted", "random"), default="targeted")
        steps = _int_param(params, "steps", default=20, minimum=1)
        seed = _int_param(params, "seed", default=0)
        recompute = _bool_param(params, "recompute")
        fmt = _choice_param(params, "format", ("json", "csv"), default="json")
        if fmt == "csv":
            curve = attack_curve(
                doc.graph, order, steps, seed, recompute_degrees=recompute
            )
            return respond(serialize.attack_csv(curve), media="text/csv")
        key = ("attack", catalog.generation, name, order, steps, seed, recompute)

        def build() -> bytes:
            curve = attack_curve(
                doc.graph, order, steps, seed, recompute_degrees=recompute
            )
            return serialize.attack_payload(name, curve)

        return gated(key, build)

    @app.get("/graphs/{name}/tail-start")
    def get_tail_start(name: str, request: Request) -> Response:
        doc = doc_of(name)
        fraction = _float_param(request.query_params, "fraction", default=0.05)
        d = _value_checked(tail_start, degree_distribution(doc.graph), fraction)
        return respond(serialize.tail_start_payload(name, fraction, d))

    return app


def _value_checked(fn, *args, **kwargs):
    """Domain validation errors become 400s instead of 500s."""
    try:
        return fn(*args, **kwargs)
    except ValueError as exc:
        raise _bad(str(exc)) from None


def _apply_filter(g: Graph, mode: str, d: int) -> SubgraphResult:
    if mode == "max":
        return _value_checked(max_dis, g, d)
    if mode == "min":
        return _value_checked(min_dis, g, d)
    return _value_checked(k_core, g, d)


def _slice_component(
    g: Graph, result: SubgraphResult | None, component: int | None
) -> tuple[Graph, SubgraphResult | None]:
    return _value_checked(component_view, g, result, component)


def serve(
    catalog: Catalog,
    host: str = "127.0.0.1",
    port: int = 8000,
    *,
    ui_dir: str | None = None,
    job_budget: float = 2.0,
    workers: int = 4,
) -> None:
    """Run the service until interrupted.  Fails fast with a clear
    message when the port is taken."""
    import socket

    import uvicorn

    app = create_app(catalog, job_budget=job_budget, workers=workers)
    if ui_dir is not None:
        from pathlib import Path

        from fastapi.staticfiles import StaticFiles

        if not Path(ui_dir).is_dir():
            raise ValueError(f"UI directory not found: {ui_dir}")
        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
    except OSError as exc:
        raise OSError(f"cannot bind {host}:{port}: {exc}") from None
    finally:
        probe.close()
    uvicorn.run(app, host=host, port=port, log_level="warning")
