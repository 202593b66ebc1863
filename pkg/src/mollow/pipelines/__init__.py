"""Built-in pipelines.

Every module in this package exposing a ``Pipeline`` class derived from
:class:`mollow.pipeline_base.BasePipeline` is registered by
:meth:`mollow.pipeline_manager.PipelineManager.load_builtin_pipelines`.
"""
