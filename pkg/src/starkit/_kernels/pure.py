"""Pure-Python kernels; drop-in twin of the compiled module.

The package selects between this module and the compiled extension at
import time (see starkit._kernels). Both expose the same two functions
over the same packed-array calling convention, so either can serve the
graph builder and the occupancy sweep.
"""

from __future__ import annotations

from array import array

TAG_NONE = 0
TAG_REGISTER = 1
TAG_FIFO = 2
TAG_LIFO = 3


def pair_tags(tmin, tmax, tfirst, roff, rdates):
    """Classify every chronologically ordered vertex pair.

    Inputs are parallel arrays over vertices sorted by the chronological
    total order: tmin/tmax/tfirst per vertex, plus the flattened sorted
    read dates (roff[i]:roff[i+1] slices rdates for vertex i). Returns
    three equal-length arrays (i, j, tag) listing only the tagged pairs,
    in (i, j) order.
    """
    n = len(tmin)
    out_i = array("q")
    out_j = array("q")
    out_t = array("q")
    for i in range(n):
        ami = tmin[i]
        ama = tmax[i]
        afi = tfirst[i]
        r0 = roff[i]
        r1 = roff[i + 1]
        for j in range(i + 1, n):
            bmi = tmin[j]
            tag = TAG_NONE
            if bmi >= ama:
                # disjoint in time: one register can hold both in turn
                tag = TAG_REGISTER
            elif bmi > ami:
                bma = tmax[j]
                if tfirst[j] > ama:
                    # overlapping, reads in write order: queue discipline
                    tag = TAG_FIFO
                elif afi > bma:
                    # nested before the earlier datum's first read: stack
                    tag = TAG_LIFO
                else:
                    # nested between two consecutive reads of the earlier datum
                    for k in range(r0, r1 - 1):
                        if rdates[k] < bmi and bma < rdates[k + 1]:
                            tag = TAG_LIFO
                            break
            if tag:
                out_i.append(i)
                out_j.append(j)
                out_t.append(tag)
    return out_i, out_j, out_t


def peak_live(tmin, tmax):
    """Peak number of simultaneously resident data.

    A datum holds its slot from the cycle it is written through the read
    phase of its last-read cycle; reads precede writes inside a cycle, so
    a slot freed at cycle t is reusable by a write at t.
    """
    events = sorted([(int(t), 1) for t in tmin] + [(int(t), -1) for t in tmax])
    cur = 0
    peak = 0
    for _, delta in events:
        cur += delta
        if cur > peak:
            peak = cur
    return peak
