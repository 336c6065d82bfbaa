"""pressgauge: near-real-time measurement of news coverage and framing.

Homepage snapshots in, structured labels and daily event clusters out, with
aggregate analytics and a human-in-the-loop review API on top.
"""

__version__ = "0.1.0"
