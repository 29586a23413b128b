"""
Hierarhija napak.

Validacijske operacije vračajo poročila; izjeme so rezervirane za napačen vhod
(napačna dolžina, negativne uteži, različne triangulacije) in za gradbene
napake, ki pomenijo hrošča v kodi.
"""


class TopologyError(RuntimeError):
    """Koren vseh napak v paketu."""


class MalformedWeightsError(TopologyError, ValueError):
    pass


class TriangulationMismatchError(TopologyError, ValueError):
    pass


class UnflippableEdgeError(TopologyError, ValueError):
    pass


class InvalidCurveError(TopologyError, ValueError):
    pass


class ShorteningError(TopologyError):
    """Krivulje ni bilo mogoče skrajšati do jedra dvotrikotniškega obroča."""


class DecompositionError(TopologyError, ValueError):
    pass


class DegenerateProfileError(TopologyError, ValueError):
    """Krivulja je vzporedna krivulji sistema ali pa je ne seka."""


class ConstructionError(TopologyError):
    """Konstrukcija je dala nekaj, kar ne bi smela. Hrošč, ne vhod."""


class TrackError(TopologyError, ValueError):
    pass


class SplitError(TrackError):
    pass


class TowerError(TopologyError):
    pass


class CoverSearchError(TopologyError):
    pass


class BadExponentSetError(ConstructionError):
    """Slabi eksponenti niso vsebovani v največ štirih zaporednih celih številih."""


class PipelineError(TopologyError):
    pass


class MalformedDocumentError(TopologyError, ValueError):
    pass
