# -*- coding: utf-8 -*-
"""整数矩阵与正规形

Hermite 正规形（行形式）与 Smith 正规形均带变换矩阵，
全部使用 Python 任意精度整数，不做浮点或模运算加速。
"""

import logging
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from ..errors import InvalidInputError

logger = logging.getLogger(__name__)

Rows = List[List[int]]


class IntMatrix:
    """行优先的整数矩阵

    使用方式：
        ```python
        m = IntMatrix([[2, 4], [6, 8]])
        result = snf(m)
        print(result.D.to_list())  # [[2, 0], [0, 4]]
        ```
    """

    def __init__(self, rows: Iterable[Sequence[int]], cols: Optional[int] = None):
        """
        Args:
            rows: 行列表
            cols: 列数（行数为 0 时必须给出）
        """
        self.rows: Rows = [[int(x) for x in row] for row in rows]
        if cols is None:
            cols = len(self.rows[0]) if self.rows else 0
        self.cols = cols
        for row in self.rows:
            if len(row) != cols:
                raise InvalidInputError("矩阵各行长度不一致", anchor="IntMatrix")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> Tuple[int, int]:
        return (len(self.rows), self.cols)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.shape == other.shape and self.rows == other.rows

    def __repr__(self) -> str:
        return f"IntMatrix({self.nrows}x{self.cols})"

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix(matmul(self.rows, other.rows, other.cols), other.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(transpose(self.rows, self.cols), self.nrows)

    def to_list(self) -> Rows:
        return [list(row) for row in self.rows]

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(identity(n), n)

    @classmethod
    def zeros(cls, m: int, n: int) -> "IntMatrix":
        return cls([[0] * n for _ in range(m)], n)


MatrixLike = Union[IntMatrix, Sequence[Sequence[int]]]


def as_rows(m: MatrixLike) -> Tuple[Rows, int]:
    """统一输入为 (行列表, 列数)"""
    if isinstance(m, IntMatrix):
        return m.to_list(), m.cols
    rows = [[int(x) for x in row] for row in m]
    return rows, (len(rows[0]) if rows else 0)


def identity(n: int) -> Rows:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> Rows:
    if cols is None:
        cols = len(rows[0]) if rows else 0
    return [[row[j] for row in rows] for j in range(cols)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], b_cols: Optional[int] = None) -> Rows:
    if b_cols is None:
        b_cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * b_cols
        for x, brow in zip(row, b):
            if x:
                for j, y in enumerate(brow):
                    if y:
                        acc[j] += x * y
        out.append(acc)
    return out


def vec_mat(v: Sequence[int], m: Sequence[Sequence[int]], cols: Optional[int] = None) -> List[int]:
    """行向量乘矩阵 v·M"""
    if cols is None:
        cols = len(m[0]) if m else 0
    acc = [0] * cols
    for x, row in zip(v, m):
        if x:
            for j, y in enumerate(row):
                if y:
                    acc[j] += x * y
    return acc


def combine(coeffs: Sequence[int], vectors: Sequence[Sequence[int]], dim: int) -> List[int]:
    """Σ c_i·v_i"""
    return vec_mat(coeffs, vectors, dim)


def add_vec(a: Sequence[int], b: Sequence[int]) -> List[int]:
    return [x + y for x, y in zip(a, b)]


def sub_vec(a: Sequence[int], b: Sequence[int]) -> List[int]:
    return [x - y for x, y in zip(a, b)]


def scale_vec(c: int, a: Sequence[int]) -> List[int]:
    return [c * x for x in a]


def _row_axpy(rows: Rows, target: int, source: int, q: int) -> None:
    # rows[target] -= q * rows[source]
    src = rows[source]
    rows[target] = [a - q * b for a, b in zip(rows[target], src)]


class HNFResult:
    """Hermite 正规形结果：H = U·M"""

    def __init__(self, H: IntMatrix, U: IntMatrix, rank: int, pivots: List[int]):
        self.H = H
        self.U = U
        self.rank = rank
        self.pivots = pivots

    def __iter__(self):
        yield self.H
        yield self.U

    def __repr__(self) -> str:
        return f"HNFResult(rank={self.rank}, shape={self.H.shape})"


def _hnf_rows(rows: Rows, cols: int, with_transform: bool = True) -> Tuple[Rows, Rows, List[int]]:
    m = len(rows)
    H = [list(r) for r in rows]
    U = identity(m) if with_transform else []
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == m:
            break
        while True:
            nonzero = [i for i in range(r, m) if H[i][c] != 0]
            if not nonzero:
                break
            piv = min(nonzero, key=lambda i: abs(H[i][c]))
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
                if with_transform:
                    U[r], U[piv] = U[piv], U[r]
            clean = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    _row_axpy(H, i, r, q)
                    if with_transform:
                        _row_axpy(U, i, r, q)
                    if H[i][c]:
                        clean = False
            if clean:
                break
        if H[r][c] == 0:
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            if with_transform:
                U[r] = [-x for x in U[r]]
        pivot = H[r][c]
        for i in range(r):
            if H[i][c]:
                q = H[i][c] // pivot
                if q:
                    _row_axpy(H, i, r, q)
                    if with_transform:
                        _row_axpy(U, i, r, q)
        pivots.append(c)
        r += 1
    return H, U, pivots


def hnf(M: MatrixLike, with_transform: bool = True) -> HNFResult:
    """行 Hermite 正规形

    Args:
        M: 输入矩阵（m×n）
        with_transform: 是否计算变换矩阵 U

    Returns:
        HNFResult，满足 H = U·M，U 幺模，零行位于底部
    """
    rows, cols = as_rows(M)
    logger.debug("hnf: %dx%d", len(rows), cols)
    H, U, pivots = _hnf_rows(rows, cols, with_transform)
    m = len(rows)
    return HNFResult(IntMatrix(H, cols), IntMatrix(U, m), len(pivots), pivots)


def hnf_basis(rows: Sequence[Sequence[int]], cols: int) -> Rows:
    """行空间的 HNF 基（去掉零行）"""
    H, _, pivots = _hnf_rows([list(r) for r in rows], cols, with_transform=False)
    return H[: len(pivots)]


def rank(rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> int:
    if cols is None:
        cols = len(rows[0]) if rows else 0
    return len(hnf_basis(rows, cols))


def left_kernel(rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> Rows:
    """{x : x·A = 0} 的 Z-基（饱和）"""
    if cols is None:
        cols = len(rows[0]) if rows else 0
    H, U, pivots = _hnf_rows([list(r) for r in rows], cols, with_transform=True)
    return [U[i] for i in range(len(pivots), len(rows))]


def integer_kernel(rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> Rows:
    """{x : A·x = 0} 的 Z-基，以行给出并化为 HNF"""
    if cols is None:
        cols = len(rows[0]) if rows else 0
    if not rows:
        return identity(cols)
    kernel = left_kernel(transpose(rows, cols), len(rows))
    return hnf_basis(kernel, cols)


def determinant_abs(rows: Sequence[Sequence[int]]) -> int:
    """方阵行列式的绝对值（HNF 对角线之积）"""
    n = len(rows)
    H, _, pivots = _hnf_rows([list(r) for r in rows], n, with_transform=False)
    if len(pivots) < n:
        return 0
    result = 1
    for i in range(n):
        result *= H[i][i]
    return abs(result)


class SNFResult:
    """Smith 正规形结果：D = P·M·Q"""

    def __init__(self, D: IntMatrix, P: IntMatrix, Q: IntMatrix, diagonal: List[int]):
        self.D = D
        self.P = P
        self.Q = Q
        self.diagonal = diagonal

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    def __iter__(self):
        yield self.D
        yield self.P
        yield self.Q

    def __repr__(self) -> str:
        return f"SNFResult(diagonal={self.diagonal})"


def snf(M: MatrixLike) -> SNFResult:
    """Smith 正规形

    最小绝对值主元策略，每步把主元所在行列模主元约化；
    对角线满足 d_1 | d_2 | …，均非负。

    Args:
        M: 输入矩阵（m×n）

    Returns:
        SNFResult，满足 D = P·M·Q，P、Q 幺模
    """
    A, n = as_rows(M)
    m = len(A)
    P = identity(m)
    Q = identity(n)
    logger.debug("snf: %dx%d", m, n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        P[i], P[j] = P[j], P[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in Q:
            row[i], row[j] = row[j], row[i]

    def col_axpy(target, source, q):
        # column target -= q * column source
        for row in A:
            row[target] -= q * row[source]
        for row in Q:
            row[target] -= q * row[source]

    t = 0
    while t < min(m, n):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            changed = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    _row_axpy(A, i, t, q)
                    _row_axpy(P, i, t, q)
                    if A[i][t]:
                        changed = True
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    col_axpy(j, t, q)
                    if A[t][j]:
                        changed = True
            if changed:
                entries = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                entries += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, pi, pj = min(entries)
                swap_rows(t, pi)
                swap_cols(t, pj)
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if A[i][j] % A[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # 把不整除的行加到主元行，再继续约化
            _row_axpy(A, t, bad, -1)
            _row_axpy(P, t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            P[t] = [-x for x in P[t]]
        t += 1
    diagonal = [A[i][i] for i in range(min(m, n))]
    return SNFResult(IntMatrix(A, n), IntMatrix(P, m), IntMatrix(Q, n), diagonal)


class IntegerSolution:
    """整数线性方程组的解：特解与核的 Z-基"""

    def __init__(self, particular: List[int], kernel: Rows):
        self.particular = particular
        self.kernel = kernel

    def __repr__(self) -> str:
        return f"IntegerSolution(particular={self.particular}, kernel_rank={len(self.kernel)})"


def solve_integer(A: MatrixLike, b: Sequence[int]) -> Optional[IntegerSolution]:
    """求解 A·x = b 的整数解

    Args:
        A: m×n 整数矩阵
        b: 长度为 m 的整数向量

    Returns:
        IntegerSolution（特解与核基），无整数解时返回 None
    """
    rows, n = as_rows(A)
    m = len(rows)
    if len(b) != m:
        raise InvalidInputError(
            f"维数不匹配: A 为 {m}x{n}，b 长度为 {len(b)}", anchor="solve_integer"
        )
    if m == 0:
        return IntegerSolution([0] * n, identity(n))
    result = snf(IntMatrix(rows, n))
    P, Q, diag = result.P.rows, result.Q.rows, result.diagonal
    c = [sum(p * x for p, x in zip(row, b)) for row in P]
    r = result.rank
    y = [0] * n
    for i in range(r):
        if c[i] % diag[i]:
            return None
        y[i] = c[i] // diag[i]
    if any(c[i] for i in range(r, m)):
        return None
    x = [sum(q * yi for q, yi in zip(row, y)) for row in Q]
    kernel = [[Q[i][j] for i in range(n)] for j in range(r, n)]
    return IntegerSolution(x, kernel)
