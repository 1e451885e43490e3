// Copyright 2026 The fieldoverlap Authors
// SPDX-License-Identifier: Apache-2.0

#include "fieldoverlap/cli.hpp"

int main(int argc, char** argv) { return fieldoverlap::cli::run(argc, argv); }
