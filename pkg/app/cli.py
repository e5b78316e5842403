"""Interfaz de línea de órdenes: cada cálculo con salida reproducible a fichero o stdout."""

import csv
import io
import json
import logging
import math
import sys
from typing import Any, Callable, Dict, List, Optional

import click
from pydantic import BaseModel, Field, ValidationError

from app.core.config import Settings, settings_from_env
from app.core.errors import ConfigError, InvalidDomainSpec, IsoperimError
from app.core.logging_config import setup_logging
from app.models.perturbation_model import PerturbationField
from app.schemas.domain_schemas import DomainInfoResponse, DomainSpec
from app.schemas.perturbation_schemas import ExperimentReportResponse, ModeRootResponse
from app.schemas.profile_schemas import ConjectureReportResponse, PerfectArcResponse
from app.services.arc_service import ArcService
from app.services.geometry_service import GeometryService
from app.services.perturbation_service import PerturbationService
from app.services.profile_service import ProfileService, table_to_csv

logger = logging.getLogger("app")


class RunConfig(BaseModel):
    """Contenido del fichero --config; las opciones de la línea de órdenes tienen prioridad"""

    settings: Dict[str, Any] = Field(default_factory=dict, description="Overrides of numeric settings")
    domain: Optional[Dict[str, Any]] = Field(None, description="Domain spec used when no domain flag is given")
    output: Optional[str] = Field(None, description="Output path used when --output is absent")


class Context(BaseModel):
    settings: Settings
    run: RunConfig
    output: Optional[str] = None


def _load_run_config(path: Optional[str]) -> RunConfig:
    if not path:
        return RunConfig()
    try:
        with open(path, encoding="utf-8") as handle:
            return RunConfig.model_validate(json.load(handle))
    except (json.JSONDecodeError, ValidationError) as exc:
        raise InvalidDomainSpec(f"invalid config file {path}: {exc}") from exc


def build_settings(run: RunConfig, threads: Optional[int] = None, log_dir: Optional[str] = None) -> Settings:
    """Opciones > fichero --config > variables de entorno > valores por defecto"""
    overrides = dict(run.settings)
    overrides.update({k: v for k, v in {"threads": threads, "log_dir": log_dir}.items() if v is not None})
    return settings_from_env(**overrides)


def _emit(ctx: Context, text: str) -> None:
    path = ctx.output or ctx.run.output
    if path:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        logger.info(f"Resultado escrito en {path}")
    else:
        click.echo(text, nl=not text.endswith("\n"))


def _json(models: Any) -> str:
    if isinstance(models, list):
        return json.dumps([m.model_dump(mode="json") for m in models], indent=2) + "\n"
    return models.model_dump_json(indent=2) + "\n"


def _run(action: Callable[[], Optional[int]]) -> None:
    """Ejecutar una orden traduciendo las excepciones a códigos de salida"""
    try:
        code = action()
    except IsoperimError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
        sys.exit(exc.exit_code)
    except ValidationError as exc:
        click.echo(f"error: invalid input: {exc}", err=True)
        sys.exit(ConfigError.exit_code)
    if code:
        sys.exit(code)


def _domain_spec(ctx: Context, options: Dict[str, Any]) -> DomainSpec:
    if options.get("domain_json"):
        raw = options["domain_json"]
        try:
            if raw.startswith("@"):
                with open(raw[1:], encoding="utf-8") as handle:
                    data = json.load(handle)
            else:
                data = json.loads(raw)
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidDomainSpec(f"cannot read domain JSON: {exc}") from exc
    elif options.get("preset"):
        names = ("radius", "a", "b", "epsilon", "a0", "a2", "a4")
        data = {"preset": options["preset"], "params": {k: options[k] for k in names if options.get(k) is not None}}
    elif ctx.run.domain is not None:
        data = dict(ctx.run.domain)
    else:
        raise InvalidDomainSpec("no domain given: use --preset, --domain or a config file")
    if options.get("normalize"):
        data["normalize"] = True
    return DomainSpec.parse(data)


def domain_options(func):
    """Opciones comunes para describir el dominio"""
    options = [
        click.option("--preset", type=click.Choice(["disk", "ellipse", "near_disk_ellipse", "quartic"])),
        click.option("--domain", "domain_json", help="Domain spec as JSON text, or @path to a JSON file"),
        click.option("--radius", type=float),
        click.option("--a", "a", type=float),
        click.option("--b", "b", type=float),
        click.option("--epsilon", type=float),
        click.option("--a0", type=float),
        click.option("--a2", type=float),
        click.option("--a4", type=float),
        click.option("--normalize", is_flag=True, help="Scale the domain to area π"),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _domain_kwargs(kwargs: Dict[str, Any]) -> Dict[str, Any]:
    keys = ("preset", "domain_json", "radius", "a", "b", "epsilon", "a0", "a2", "a4", "normalize")
    return {k: kwargs.pop(k) for k in keys}


@click.group()
@click.option("--config", "config_path", type=click.Path(dir_okay=False), help="JSON run configuration")
@click.option("--threads", type=int, help="Worker threads for grid sweeps (default: ISOPERIM_THREADS)")
@click.option("--output", "-o", type=click.Path(dir_okay=False), help="Write the result here instead of stdout")
@click.option("--log-dir", type=click.Path(file_okay=False), help="Directory for rotating log files")
@click.pass_context
def cli(ctx, config_path, threads, output, log_dir):
    """Perfiles isoperimétricos de dominios convexos planos."""

    def build():
        run = _load_run_config(config_path)
        settings = build_settings(run, threads, log_dir)
        setup_logging(settings.log_dir, console_level=logging.WARNING)
        ctx.obj = Context(settings=settings, run=run, output=output)

    _run(build)


@cli.command("domain-info")
@domain_options
@click.pass_obj
def domain_info(ctx: Context, **kwargs):
    """Área, perímetro, curvaturas, vértices y clase 𝒜."""

    def action():
        geometry = GeometryService(ctx.settings)
        report = geometry.classify(geometry.resolve(_domain_spec(ctx, _domain_kwargs(kwargs))))
        _emit(ctx, _json(DomainInfoResponse.model_validate(report)))

    _run(action)


@cli.command("profile")
@domain_options
@click.option("--samples", default=256, show_default=True, type=click.IntRange(min=2))
@click.pass_obj
def profile(ctx: Context, samples: int, **kwargs):
    """Tabla CSV theta,area,length,curvature de la familia simétrica."""

    def action():
        service = ProfileService(ctx.settings)
        domain = service.geometry.resolve(_domain_spec(ctx, _domain_kwargs(kwargs)))
        _emit(ctx, table_to_csv(service.symmetric_profile(domain, samples)))

    _run(action)


@cli.command("check-conjecture")
@domain_options
@click.option("--samples", default=256, show_default=True, type=click.IntRange(min=16))
@click.pass_obj
def check_conjecture(ctx: Context, samples: int, **kwargs):
    """sup L/L* < 1; sale con 1 si la comprobación no pasa."""

    def action():
        service = ProfileService(ctx.settings)
        domain = service.geometry.resolve(_domain_spec(ctx, _domain_kwargs(kwargs)))
        report = service.conjecture_check(domain, samples)
        _emit(ctx, _json(ConjectureReportResponse.model_validate(report)))
        return 0 if report.passed else 1

    _run(action)


@cli.command("arcs-find")
@domain_options
@click.option("--area", type=float, help="Enclosed area of the arcs to find")
@click.option("--grid", type=click.IntRange(min=16), help="Boundary grid size")
@click.option("--vertex", type=float, help="Normal angle of a vertex: trace its shrinking family instead")
@click.option("--offsets", default="0.02,0.04,0.06,0.08,0.1", show_default=True, help="Arclength offsets from the vertex")
@click.pass_obj
def arcs_find(ctx: Context, area: Optional[float], grid: Optional[int], vertex: Optional[float], offsets: str, **kwargs):
    """Arcos perfectos a un área dada, o la familia que se contrae hacia un vértice."""

    def action():
        geometry = GeometryService(ctx.settings)
        arcs = ArcService(ctx.settings, geometry)
        domain = geometry.resolve(_domain_spec(ctx, _domain_kwargs(kwargs)))
        if vertex is not None:
            try:
                grid_offsets = [float(v) for v in offsets.split(",") if v.strip()]
            except ValueError as exc:
                raise InvalidDomainSpec(f"invalid --offsets: {offsets}") from exc
            found = arcs.vertex_family(domain, vertex, grid_offsets)
        elif area is not None:
            found = arcs.arcs_at_area(domain, area, grid)
        else:
            raise InvalidDomainSpec("give --area or --vertex")
        _emit(ctx, _json([PerfectArcResponse.model_validate(arc) for arc in found]))

    _run(action)


@cli.group("perturb")
def perturb():
    """Modos críticos y experimento de decrecimiento del perfil."""


@perturb.command("roots")
@click.option("--n", "n", required=True, type=click.IntRange(min=2))
@click.pass_obj
def perturb_roots(ctx: Context, n: int):
    """Raíces b ∈ (0, π/2) de cos b·sin nb − n·sin b·cos nb."""

    def action():
        roots = PerturbationService(ctx.settings).find_mode_roots(n)
        _emit(ctx, _json([ModeRootResponse.model_validate(root) for root in roots]))

    _run(action)


@perturb.command("experiment")
@click.option("--mode", type=click.IntRange(min=1), help="Perturb by cos(mode·u)")
@click.option("--sin", "use_sin", is_flag=True, help="Use sin(mode·u) instead of cos(mode·u)")
@click.option("--area", type=float, help="Area to probe (default: first root of the mode)")
@click.option("--s-max", default=5e-3, show_default=True, type=float, help="Largest perturbation size")
@click.option("--steps", default=5, show_default=True, type=click.IntRange(min=2))
@click.option("--translation", is_flag=True, help="Run the translated-disk null control")
@click.pass_obj
def perturb_experiment(ctx: Context, mode, use_sin, area, s_max, steps, translation):
    """Ajuste I(s) ≈ I(0) + αs + βs² sobre dominios perturbados."""

    def action():
        service = PerturbationService(ctx.settings)
        if s_max <= 0.0:
            raise InvalidDomainSpec("--s-max must be positive")
        s_grid = [s_max * (k + 1) / steps for k in range(steps)]
        if translation:
            report = service.rigid_motion_control(area if area is not None else math.pi / 2.0, s_grid)
        else:
            if mode is None:
                raise InvalidDomainSpec("give --mode or --translation")
            field = PerturbationField.mode(mode, 0.0, 1.0) if use_sin else PerturbationField.mode(mode)
            target = area
            if target is None:
                roots = service.find_mode_roots(mode) if mode >= 2 else []
                if not roots:
                    raise InvalidDomainSpec(f"mode {mode} has no critical root; give --area")
                target = roots[0].area
            report = service.profile_decrease_experiment(field, target, s_grid)
        _emit(ctx, _json(ExperimentReportResponse.model_validate(report)))

    _run(action)


def _rows_to_csv(header: List[str], rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([v if isinstance(v, int) else "%.17g" % v for v in row])
    return buffer.getvalue()


@cli.command("implicit-curve")
@click.option("--xmin", default=-8.0, show_default=True, type=float)
@click.option("--xmax", default=8.0, show_default=True, type=float)
@click.option("--ymin", default=0.0, show_default=True, type=float)
@click.option("--ymax", default=1.57, show_default=True, type=float)
@click.option("--resolution", default=400, show_default=True, type=click.IntRange(min=2))
@click.pass_obj
def implicit_curve(ctx: Context, xmin, xmax, ymin, ymax, resolution):
    """Puntos x,y,branch del conjunto cos y·sin xy − x·sin y·cos xy = 0."""

    def action():
        points = PerturbationService(ctx.settings).implicit_curve_sample((xmin, xmax), (ymin, ymax), resolution)
        _emit(ctx, _rows_to_csv(["x", "y", "branch"], points))

    _run(action)


@cli.command("mode-slice")
@click.option("--value", required=True, type=float, help="Coordinate of the slicing line")
@click.option("--axis", type=click.Choice(["x", "y"]), default="x", show_default=True, help="Which coordinate is fixed")
@click.option("--lo", default=1e-6, show_default=True, type=float)
@click.option("--hi", default=math.pi / 2.0 - 1e-6, show_default=True, type=float)
@click.pass_obj
def mode_slice(ctx: Context, value, axis, lo, hi):
    """Raíces del conjunto cero a lo largo de x = value o de y = value."""

    def action():
        roots = PerturbationService(ctx.settings).mode_slice(value, axis, (lo, hi))
        _emit(ctx, _rows_to_csv(["root"], [(r,) for r in roots]))

    _run(action)


@cli.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True, type=int)
def serve(host: str, port: int):
    """Servir la API HTTP con uvicorn."""
    import uvicorn

    uvicorn.run("app.main:app", host=host, port=port)


def main() -> None:
    cli(prog_name="isoperim")


if __name__ == "__main__":
    main()
