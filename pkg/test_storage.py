"""Tests for the dense, packed and tiled storage formats"""

import itertools

import numpy as np
import pytest

from hermitian import (
    DenseHermitian,
    DimensionError,
    PackedHermitian,
    StorageFormat,
    TiledHermitian,
    UnknownFormatError,
    convert,
    footprint_bytes,
    from_matrix,
    get_element,
    random_density_matrix,
    random_hermitian,
)

FORMATS = [("dense", 0), ("packed", 0), ("tiled", 0), ("tiled", 2), ("tiled", 5)]


class TestRandomOperators:

    def test_hermitian_exactly(self):
        mat = random_hermitian(1, 7).to_matrix()
        np.testing.assert_array_equal(mat, mat.conj().T)
        np.testing.assert_array_equal(np.diag(mat).imag, 0.0)

    def test_same_seed_same_matrix_across_formats(self):
        dense = random_hermitian(3, 7).to_matrix()
        tiled = random_hermitian(3, 7, "tiled", 5)
        packed = random_hermitian(3, 7, "packed")
        np.testing.assert_array_equal(convert(tiled, "dense").to_matrix(), dense)
        np.testing.assert_array_equal(packed.to_matrix(), dense)

    def test_seeds_differ(self):
        assert not np.array_equal(random_hermitian(2, 1).data, random_hermitian(2, 2).data)

    def test_density_matrix(self):
        rho = random_density_matrix(1, 1)
        assert abs(np.trace(rho.to_matrix()).real - 1.0) <= 1e-12
        eigenvalues = np.linalg.eigvalsh(random_density_matrix(2, 3).to_matrix())
        assert eigenvalues.min() >= -1e-12

    def test_density_matrix_formats_agree(self):
        tiled = random_density_matrix(1, 1, "tiled", 5)
        np.testing.assert_array_equal(tiled.to_matrix(), random_density_matrix(1, 1).to_matrix())
        value = get_element(tiled, 0, 0)
        assert value.imag == 0.0 and 0.0 <= value.real <= 1.0

    def test_invalid_qubit_count(self):
        with pytest.raises(DimensionError):
            random_hermitian(0, 1)


class TestLayout:

    def test_dense_row_major(self):
        mat = random_hermitian(2, 4).to_matrix()
        h = from_matrix(mat, "dense")
        np.testing.assert_array_equal(h.data, mat.reshape(-1))

    def test_packed_column_major_lower(self):
        mat = random_hermitian(2, 4).to_matrix()
        h = from_matrix(mat, "packed")
        expected = [mat[i, j] for j in range(4) for i in range(j, 4)]
        np.testing.assert_array_equal(h.data, expected)

    def test_tiled_layout(self):
        mat = random_hermitian(3, 4).to_matrix()
        h = from_matrix(mat, "tiled", 2)
        assert (h.M, h.tiles_per_side, h.n_tiles) == (4, 2, 3)
        np.testing.assert_array_equal(h.tile(0, 0), mat[:4, :4])
        np.testing.assert_array_equal(h.tile(1, 0), mat[4:, :4])
        np.testing.assert_array_equal(h.tile(1, 1), mat[4:, 4:])
        np.testing.assert_array_equal(h.data[16:32], mat[4:, :4].reshape(-1))
        with pytest.raises(IndexError):
            h.tile(0, 1)

    @pytest.mark.parametrize("fmt, m", FORMATS)
    def test_lower_triangle_is_authoritative(self, fmt, m, rng):
        A = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        h = from_matrix(A, fmt, m)
        for i, j in itertools.product(range(4), repeat=2):
            assert get_element(h, i, j) == np.conj(get_element(h, j, i))
            if i > j:
                assert get_element(h, i, j) == A[i, j]
        np.testing.assert_array_equal(np.diag(h.to_matrix()), A.diagonal().real)

    def test_formats_agree_on_non_hermitian_input(self, rng):
        A = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
        dense = from_matrix(A, "dense").to_matrix()
        for fmt, m in FORMATS[1:]:
            np.testing.assert_array_equal(from_matrix(A, fmt, m).to_matrix(), dense)

    def test_tiled_padding_zeroed(self):
        h = random_hermitian(1, 3, "tiled", 5)
        assert h.data.size == 1024
        tile = h.tile(0, 0)
        assert not tile[2:, :].any() and not tile[:, 2:].any()

    def test_buffers_aligned(self):
        for fmt, m in FORMATS:
            h = random_hermitian(3, 0, fmt, m)
            assert h.data.ctypes.data % 64 == 0

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6, 7])
    @pytest.mark.parametrize("m", [0, 1, 2, 5])
    def test_storage_count_law(self, n, m):
        h = TiledHermitian(n, m)
        N, M = 1 << n, 1 << m
        expected = N * (N + M) // 2 if n >= m else M * M
        assert h.data.size == expected

    def test_tile_exponent_bounds(self):
        TiledHermitian(1, 5)
        TiledHermitian(3, 5)
        with pytest.raises(DimensionError):
            TiledHermitian(3, -1)
        with pytest.raises(DimensionError):
            TiledHermitian(4, 7)

    def test_rejects_non_power_of_two(self):
        with pytest.raises(DimensionError):
            from_matrix(np.eye(3), "dense")
        with pytest.raises(DimensionError):
            from_matrix(np.ones((2, 4)), "tiled")

    def test_format_parsing(self):
        assert StorageFormat.parse("Tiled") is StorageFormat.TILED
        assert StorageFormat.parse(1) is StorageFormat.PACKED
        assert StorageFormat.DENSE.label == "dense"
        with pytest.raises(UnknownFormatError):
            StorageFormat.parse("banded")
        with pytest.raises(UnknownFormatError):
            StorageFormat.parse(7)


class TestElements:

    @pytest.mark.parametrize("fmt, m", FORMATS)
    def test_mirror_law(self, fmt, m):
        h = random_hermitian(3, 11, fmt, m)
        for i, j in itertools.product(range(8), repeat=2):
            assert h.get_element(i, j) == np.conj(h.get_element(j, i))

    def test_packed_mirror(self):
        h = random_hermitian(2, 5, "packed")
        assert get_element(h, 1, 0) == np.conj(get_element(h, 0, 1))

    def test_tiled_element_matches_dense(self):
        h = random_hermitian(6, 9, "tiled", 2)
        dense = convert(h, "dense")
        assert get_element(h, 5, 37) == get_element(dense, 5, 37)
        assert get_element(h, 37, 5) == get_element(dense, 37, 5)

    @pytest.mark.parametrize("fmt, m", FORMATS)
    def test_every_element(self, fmt, m):
        h = random_hermitian(3, 2, fmt, m)
        mat = h.to_matrix()
        for i, j in itertools.product(range(8), repeat=2):
            assert get_element(h, i, j) == mat[i, j]

    @pytest.mark.parametrize("i, j", [(-1, 0), (0, 8), (8, 8)])
    def test_out_of_range(self, i, j):
        with pytest.raises(IndexError):
            get_element(random_hermitian(3, 0, "tiled", 2), i, j)


class TestConvert:

    def test_dense_tiled_round_trip(self):
        h = random_hermitian(2, 3)
        back = convert(convert(h, "tiled", 5), "dense")
        np.testing.assert_array_equal(back.data, h.data)

    def test_dense_packed_round_trip(self):
        h = random_hermitian(6, 3)
        back = convert(convert(h, "packed"), "dense")
        np.testing.assert_array_equal(back.data, h.data)

    @pytest.mark.parametrize("src, dst", list(itertools.permutations(FORMATS, 2)))
    def test_closure(self, src, dst):
        h = random_hermitian(4, 8, src[0], src[1])
        out = convert(h, dst[0], dst[1])
        assert out.format is StorageFormat.parse(dst[0])
        np.testing.assert_array_equal(out.to_matrix(), h.to_matrix())

    def test_copy_is_independent(self):
        h = random_hermitian(3, 1, "tiled", 2)
        dup = convert(h, "tiled")
        dup.data[0] = 99.0
        assert h.data[0] != 99.0
        assert isinstance(convert(h, "packed"), PackedHermitian)
        assert isinstance(convert(h, "dense"), DenseHermitian)


class TestFootprint:

    @pytest.mark.parametrize("n, expected", [
        (1, 16384),
        (2, 16384),
        (5, 16384),
        (10, 8_650_752),
        (15, 8_598_323_200),
    ])
    def test_table_rows(self, n, expected):
        assert footprint_bytes(n, 5, "tiled") == expected

    def test_n15_reads_as_eight_gib(self):
        assert round(footprint_bytes(15, 5, "tiled") / 2 ** 30, 1) == 8.0

    def test_storage_saving(self):
        for n in range(10, 21):
            ratio = footprint_bytes(n, 5, "tiled") / footprint_bytes(n, 5, "dense")
            assert ratio == 0.5 + 32 / (2 << n)
            if n >= 13:
                assert ratio <= 0.502

    def test_dense_and_packed(self):
        assert footprint_bytes(10, 5, "dense") == 2 ** 20 * 16
        assert footprint_bytes(10, 5, "packed") == 1024 * 1025 // 2 * 16

    def test_matches_allocation(self):
        for fmt, m in FORMATS:
            h = random_hermitian(4, 0, fmt, m)
            assert h.nbytes == footprint_bytes(4, m, fmt)

    def test_invalid_query(self):
        with pytest.raises(DimensionError):
            footprint_bytes(0, 5, "tiled")
