# cython: language_level=3, boundscheck=False, wraparound=False, initializedcheck=False
"""Compiled simple-path enumeration over a CSR adjacency.

Mirrors ``harm._pykernel.simple_paths`` exactly, including visit order.
"""

from cpython.ref cimport Py_INCREF
from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM
from libc.stdlib cimport malloc, free
from libc.string cimport memset


cdef tuple _emit(int *stack, int depth, int last, list ints):
    cdef tuple t = PyTuple_New(depth + 2)
    cdef int k
    cdef object v
    for k in range(depth + 1):
        v = ints[stack[k]]
        Py_INCREF(v)
        PyTuple_SET_ITEM(t, k, v)
    v = ints[last]
    Py_INCREF(v)
    PyTuple_SET_ITEM(t, depth + 1, v)
    return t


def simple_paths(const int[:] indptr, const int[:] indices, int source, int target,
                 long long cap):
    """Return every simple path source -> target as tuples of node indices.

    Neighbors are visited in CSR order. Returns ``None`` once more than
    ``cap`` paths have been found.
    """
    cdef Py_ssize_t n = indptr.shape[0] - 1
    cdef list out = []
    cdef list ints
    cdef long long count = 0
    cdef int depth, node, nxt
    cdef int *stack
    cdef int *cursor
    cdef char *on_path

    if n <= 0 or source < 0 or source >= n or target < 0 or target >= n:
        return out
    if source == target:
        return [(source,)]

    ints = list(range(n))
    stack = <int *> malloc(n * sizeof(int))
    cursor = <int *> malloc(n * sizeof(int))
    on_path = <char *> malloc(n * sizeof(char))
    if stack == NULL or cursor == NULL or on_path == NULL:
        free(stack); free(cursor); free(on_path)
        raise MemoryError()
    memset(on_path, 0, n * sizeof(char))

    try:
        depth = 0
        stack[0] = source
        cursor[0] = indptr[source]
        on_path[source] = 1
        while depth >= 0:
            node = stack[depth]
            if cursor[depth] >= indptr[node + 1]:
                on_path[node] = 0
                depth -= 1
                continue
            nxt = indices[cursor[depth]]
            cursor[depth] += 1
            if on_path[nxt]:
                continue
            if nxt == target:
                count += 1
                if count > cap:
                    return None
                out.append(_emit(stack, depth, nxt, ints))
                continue
            depth += 1
            stack[depth] = nxt
            cursor[depth] = indptr[nxt]
            on_path[nxt] = 1
        return out
    finally:
        free(stack)
        free(cursor)
        free(on_path)
