//! Action descriptions accepted by `classify pl --spec`.

use serde::{Deserialize, Serialize};
use solvline::counterexample::GBElement;
use solvline::{Affine, OrderTag, PlMap};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ActionSpec {
    Affine {
        g: Affine,
        h0: Affine,
    },
    /// The symbolic Plante-like action, sampled through a realization.
    Plante {
        tag: OrderTag,
    },
    Pl {
        g: PlMap,
        h0: PlMap,
    },
    /// A pair of elements of the lamplighter group over `B`.
    WreathB {
        g1: GBElement,
        g2: GBElement,
    },
}
