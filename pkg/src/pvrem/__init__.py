"""Rectangle exchange maps built from cubic Pisot cut-and-project sets.

Modules
-------
numberfield   exact arithmetic and decidable signs in the cubic field
pisot         companion generators, matrix words, eigendata, monoid checks
cutproject    lattice window enumeration, the z-ordered walk, step discovery
rectgeo       exact rectilinear regions with field-element coordinates
rem           the seven-tile rectangle exchange map and its dynamics
renorm        first-return partitions, codings, renormalization verifiers
demgeneral    floating-point domain exchange maps on curved windows
cli           command-line entry points
"""

__version__ = "0.1.0"
