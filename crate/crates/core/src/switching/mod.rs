//! Local rewrites of a packing that reshape its leave: the basic
//! `(alpha, beta)`-switch and the two procedures built on it.

mod chord;
mod lasso;
mod switch;

pub use chord::{chord_to_lasso, ChordToLasso};
pub use lasso::{lasso_to_cycle, LassoToCycle};
pub use switch::{perform_switch, surplus, SwitchRequest, SwitchResult};

use crate::error::Result;
use crate::packing::Packing;
use crate::Vertex;

/// A switch as it was carried out.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AppliedSwitch {
    pub request: SwitchRequest,
    pub terminus: Vertex,
}

pub(crate) fn apply_switch(
    p: &Packing,
    alpha: Vertex,
    beta: Vertex,
    origin: Vertex,
) -> Result<(Packing, AppliedSwitch)> {
    let request = SwitchRequest {
        alpha,
        beta,
        origin,
    };
    let r = perform_switch(p, request)?;
    Ok((
        r.packing,
        AppliedSwitch {
            request,
            terminus: r.terminus,
        },
    ))
}
