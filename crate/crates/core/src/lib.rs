pub mod abgrp;
pub mod cocycle;
pub mod covering;
pub mod fingroup;
pub mod knot;
pub mod permgrp;
pub mod pi1;
pub mod quandle;
