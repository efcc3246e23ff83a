#!/usr/bin/env python3
# Copyright 2026 The Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Plot J_k curves from trace.csv files or a montecarlo jk_mean.csv."""

import argparse
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("inputs", nargs="+", type=pathlib.Path,
                        help="trace.csv or jk_mean.csv files")
    parser.add_argument("-o", "--output", type=pathlib.Path,
                        default=pathlib.Path("jk.png"))
    parser.add_argument("--linear", action="store_true",
                        help="linear axes instead of log-log")
    parser.add_argument("--with-flag", action="store_true",
                        help="shade iterations with equilibrium_flag = 1")
    args = parser.parse_args()

    fig, ax = plt.subplots(figsize=(6, 4))
    for path in args.inputs:
        frame = pd.read_csv(path)
        if "J_k" in frame.columns:
            label = path.parent.name or path.stem
            ax.plot(frame["iter"], frame["J_k"], label=label)
            if args.with_flag and "equilibrium_flag" in frame.columns:
                flagged = frame[frame["equilibrium_flag"] == 1]["iter"]
                if not flagged.empty:
                    ax.axvspan(flagged.min(), frame["iter"].max(), alpha=0.1)
        else:
            for column in frame.columns[1:]:
                ax.plot(frame["iter"], frame[column], label=column)
    if not args.linear:
        ax.set_xscale("log")
        ax.set_yscale("log")
    ax.set_xlabel("iteration k")
    ax.set_ylabel("J^k")
    ax.legend()
    fig.tight_layout()
    fig.savefig(args.output, dpi=150)
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
