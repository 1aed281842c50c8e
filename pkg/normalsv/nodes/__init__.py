"""Multi-step workflows built on the pricers.

Each node is a plain function that takes validated inputs and returns
results; file I/O stays in ``normalsv.services.storage``.

  - build_surface.py  → strike x maturity normal implied-vol surfaces
  - run_checks.py     → oracle suite behind ``normalsv verify``
  - benchmark.py      → FFT vs Monte-Carlo timings
"""
