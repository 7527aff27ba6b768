"""Exact graph polynomials: Tutte, Symanzik, Bollobas-Riordan and their Moyal versions."""

from .bollobas import br, br_classical, br_multivariate, tutte_specialization, xi, xi_duality
from .classical import (diagram, forest_poly, gen_u, gen_v, noble_welsh, recover_u, recover_v,
                        symanzik_u, symanzik_v, tutte, upsilon, w_categorified, z_multivariate)
from .errors import GraphError, ParseError, ResourceLimitError, UnsupportedOperation
from .gpgfile import GraphFile, dumps, parse
from .graph import Edge, Flag, Graph
from .momentum import MomentumForm
from .moyal import MoyalContext, nc_u, nc_x, nc_y, star_trees, two_star_trees
from .polyring import MPoly
from .ribbon import RibbonGraph, Slot

__all__ = [name for name in dir() if not name.startswith("_")]
