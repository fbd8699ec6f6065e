import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxmean import (
    GeneratorConfig,
    Instance,
    InstanceKind,
    InvalidConfigError,
    ParseError,
    generate,
    read_instance,
    write_instance,
)


class TestGenerate:
    def test_two_element_shape(self):
        inst = generate(GeneratorConfig(n=2, kind=InstanceKind.TYPE_I, seed=7))
        assert inst.d.shape == (2, 2)
        assert inst.d[0, 0] == inst.d[1, 1] == 0.0
        assert -10.0 <= inst.d[0, 1] <= 10.0
        assert inst.d[0, 1] == inst.d[1, 0]

    def test_type2_magnitudes(self):
        inst = generate(GeneratorConfig(n=100, kind=InstanceKind.TYPE_II, seed=1))
        off = inst.d[~np.eye(100, dtype=bool)]
        assert np.all((np.abs(off) >= 5.0) & (np.abs(off) <= 10.0))

    def test_type1_range(self):
        inst = generate(GeneratorConfig(n=60, kind=InstanceKind.TYPE_I, seed=5))
        assert np.all(np.abs(inst.d) <= 10.0)

    def test_deterministic_for_seed(self):
        a = generate(GeneratorConfig(n=50, kind=InstanceKind.TYPE_I, seed=42))
        b = generate(GeneratorConfig(n=50, kind=InstanceKind.TYPE_I, seed=42))
        assert np.array_equal(a.d, b.d)

    def test_seeds_differ(self):
        a = generate(GeneratorConfig(n=20, seed=1))
        b = generate(GeneratorConfig(n=20, seed=2))
        assert not np.array_equal(a.d, b.d)

    def test_type1_mean_near_zero(self):
        inst = generate(GeneratorConfig(n=500, kind=InstanceKind.TYPE_I, seed=11))
        off = inst.d[np.triu_indices(500, k=1)]
        assert -0.5 <= off.mean() <= 0.5

    def test_rounding(self):
        inst = generate(GeneratorConfig(n=30, seed=3, decimals=1))
        off = inst.d[np.triu_indices(30, k=1)]
        assert np.allclose(off, np.round(off, 1))

    @given(seed=st.integers(0, 2**32 - 1), n=st.integers(2, 40))
    @settings(max_examples=25, deadline=None)
    def test_symmetry_property(self, seed, n):
        inst = generate(GeneratorConfig(n=n, kind=InstanceKind.TYPE_II, seed=seed))
        assert np.array_equal(inst.d, inst.d.T)
        assert np.all(np.diag(inst.d) == 0.0)

    def test_rejects_small_n(self):
        with pytest.raises(InvalidConfigError):
            GeneratorConfig(n=1)

    def test_rejects_bad_decimals(self):
        with pytest.raises(InvalidConfigError):
            GeneratorConfig(n=5, decimals=10)


class TestRoundTrip:
    def test_generated_instance(self):
        inst = generate(GeneratorConfig(n=20, kind=InstanceKind.TYPE_I, seed=8))
        buf = io.StringIO()
        write_instance(inst, buf)
        buf.seek(0)
        back = read_instance(buf)
        assert back.n == inst.n
        assert np.array_equal(back.d, inst.d)

    @given(seed=st.integers(0, 10**6), decimals=st.integers(0, 9))
    @settings(max_examples=20, deadline=None)
    def test_round_trip_any_precision(self, seed, decimals):
        inst = generate(GeneratorConfig(n=8, seed=seed, decimals=decimals))
        buf = io.StringIO()
        write_instance(inst, buf)
        buf.seek(0)
        assert np.array_equal(read_instance(buf).d, inst.d)

    def test_file_round_trip(self, tmp_path):
        inst = generate(GeneratorConfig(n=10, seed=2))
        path = tmp_path / "inst.txt"
        write_instance(inst, path)
        assert np.array_equal(read_instance(path).d, inst.d)


class TestParser:
    def test_pair_format(self):
        text = "3\n1 2 4.0\n1 3 -2.0\n2 3 0.5\n"
        inst = read_instance(io.StringIO(text))
        assert inst.d[0, 1] == 4.0
        assert inst.d[2, 0] == -2.0
        assert inst.d[1, 2] == 0.5

    def test_comments_ignored(self):
        text = "# hello\n2\n# mid\n1 2 3.25\n"
        assert read_instance(io.StringIO(text)).d[0, 1] == 3.25

    def test_missing_pairs(self):
        with pytest.raises(ParseError):
            read_instance(io.StringIO("3\n1 2 4.0\n1 3 -2.0\n"))

    def test_duplicate_pair_names_line(self):
        with pytest.raises(ParseError, match="line 3"):
            read_instance(io.StringIO("3\n1 2 4.0\n1 2 1.0\n2 3 0.5\n"))

    def test_full_matrix_layout(self):
        text = "3\n0 1.5 -2\n1.5 0 3\n-2 3 0\n"
        inst = read_instance(io.StringIO(text))
        assert inst.d[0, 1] == 1.5
        assert inst.d[0, 2] == -2.0

    def test_asymmetric_matrix_rejected(self):
        text = "2\n0 1.0\n1.1 0\n"
        with pytest.raises(ParseError, match="symmetric"):
            read_instance(io.StringIO(text))

    def test_matrix_symmetry_tolerance(self):
        text = "2\n0 1.0\n1.0000000001 0\n"
        inst = read_instance(io.StringIO(text))
        assert inst.d[0, 1] == pytest.approx(1.0, abs=1e-9)

    def test_out_of_range_index(self):
        with pytest.raises(ParseError):
            read_instance(io.StringIO("3\n1 2 4.0\n1 4 1.0\n2 3 0.5\n"))

    def test_bad_value_names_line(self):
        with pytest.raises(ParseError, match="line 3"):
            read_instance(io.StringIO("3\n1 2 4.0\n1 3 oops\n2 3 0.5\n"))

    def test_empty_file(self):
        with pytest.raises(ParseError):
            read_instance(io.StringIO(""))

    def test_n_below_two(self):
        with pytest.raises(ParseError):
            read_instance(io.StringIO("1\n"))


class TestInstanceInvariants:
    def test_rejects_asymmetric(self):
        d = np.array([[0.0, 1.0], [2.0, 0.0]])
        with pytest.raises(InvalidConfigError):
            Instance(n=2, d=d)

    def test_rejects_nonzero_diagonal(self):
        d = np.array([[1.0, 2.0], [2.0, 0.0]])
        with pytest.raises(InvalidConfigError):
            Instance(n=2, d=d)

    def test_matrix_is_read_only(self):
        inst = generate(GeneratorConfig(n=5, seed=0))
        with pytest.raises(ValueError):
            inst.d[0, 1] = 99.0
