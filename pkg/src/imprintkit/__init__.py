"""imprintkit: a configuration-driven engine for running a publishing imprint.

Subpackages map to the pipeline stages: ``config`` (hierarchy resolution),
``persona`` (editorial identity and prompts), ``ideation`` (proposal
generation and tournament ranking), ``gateway`` (model routing and human
gates), ``codex`` (book structure and typeset source emission), ``qa``
(verification, pricing, distribution feeds), and ``service`` (persistence,
cycles, HTTP API).
"""

__version__ = "0.1.0"
