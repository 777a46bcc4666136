// Copyright 2026 The ftcb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! File formats, the analysis pipeline and batch benchmarking on top of
//! `ftcb-core`.

pub use ftcb_core as core;

pub mod analysis;
pub mod bench;
pub mod generate;
pub mod output;
pub mod pbc_text;
pub mod qasm;
