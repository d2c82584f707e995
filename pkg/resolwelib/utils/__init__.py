""" Stream files, synthetic data, the pipeline and the command shell """

from .pipeline import (
    PipelineConfig,
    PipelineResult,
    evaluate_model,
    run_pipeline,
    timing_lines,
)
from .shell import ResolweShell
from .stream import format_block, iter_stream_lines, read_stream, write_stream
from .synth import SynthConfig, synth_generate, synth_manifest, synth_stream

__all__ = [
    # From pipeline
    "PipelineConfig",
    "PipelineResult",
    "evaluate_model",
    "run_pipeline",
    "timing_lines",
    # From shell
    "ResolweShell",
    # From stream
    "format_block",
    "iter_stream_lines",
    "read_stream",
    "write_stream",
    # From synth
    "SynthConfig",
    "synth_generate",
    "synth_manifest",
    "synth_stream",
]
