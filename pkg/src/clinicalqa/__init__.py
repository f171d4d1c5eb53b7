"""Clinical question answering over medical abstracts.

The pipeline maps text to medical phrases and semantic tags, restricts the
corpus to evidence-based documents, gates questions for answerability,
retrieves candidate abstracts by dual vector-space similarity, and ranks
them by how well their sentences carry the question's focus.

Typical library use:

    from clinicalqa import config, pipeline

    cfg = config.bundled_config(workdir="build")
    pipe = pipeline.build_all(cfg)
    answer = pipe.ask("What is the drug of choice for hypertension?")
"""

__version__ = "0.1.0"

__all__ = ["__version__"]
