import json

import pytest

from interfacemodes.medium import InterfaceMedium, Layer, UnitCell


def make_cell_a() -> UnitCell:
    return UnitCell(
        layers=(
            Layer(eps_re=1.0, eps_im_coeff=1.0, width=0.25),
            Layer(eps_re=4.0, eps_im_coeff=1.0, width=0.5),
            Layer(eps_re=1.0, eps_im_coeff=1.0, width=0.25),
        )
    )


def make_cell_b() -> UnitCell:
    return UnitCell(
        layers=(
            Layer(eps_re=4.0, eps_im_coeff=1.0, width=0.25),
            Layer(eps_re=1.0, eps_im_coeff=1.0, width=0.5),
            Layer(eps_re=4.0, eps_im_coeff=1.0, width=0.25),
        )
    )


@pytest.fixture(scope="session")
def cell_a() -> UnitCell:
    return make_cell_a()


@pytest.fixture(scope="session")
def cell_b() -> UnitCell:
    return make_cell_b()


@pytest.fixture(scope="session")
def medium(cell_a, cell_b) -> InterfaceMedium:
    return InterfaceMedium(cell_A=cell_a, cell_B=cell_b, mu0=1.0, delta=0.0)


CONFIG_DICT = {
    "mu0": 1.0,
    "delta": 0.0,
    "cell_A": {
        "layers": [
            {"eps_re": 1.0, "eps_im_coeff": 1.0, "width": 0.25},
            {"eps_re": 4.0, "eps_im_coeff": 1.0, "width": 0.5},
            {"eps_re": 1.0, "eps_im_coeff": 1.0, "width": 0.25},
        ]
    },
    "cell_B": {
        "layers": [
            {"eps_re": 4.0, "eps_im_coeff": 1.0, "width": 0.25},
            {"eps_re": 1.0, "eps_im_coeff": 1.0, "width": 0.5},
            {"eps_re": 4.0, "eps_im_coeff": 1.0, "width": 0.25},
        ]
    },
}


@pytest.fixture()
def config_path(tmp_path):
    p = tmp_path / "medium.json"
    p.write_text(json.dumps(CONFIG_DICT), encoding="utf-8")
    return p
