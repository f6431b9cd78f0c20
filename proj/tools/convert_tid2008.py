#!/usr/bin/env python3
"""One-shot converter: TID2008 distribution -> cvssi manifest CSV.

Expected TID2008 layout (as distributed):

    reference_images/I01.BMP ... I25.BMP
    distorted_images/iXX_YY_Z.bmp     XX ref 01..25, YY type 01..17, Z level 1..4
    mos_with_names.txt                one "<mos> <file>" (or "<file> <mos>") pair per line

cvssi reads PGM/PPM, so the manifest references .ppm siblings of the BMP
files. Pass --convert-images to have this script write those .ppm files
(requires Pillow); otherwise convert them yourself, e.g.

    mogrify -format ppm reference_images/*.BMP distorted_images/*.bmp

Usage:
    python3 tools/convert_tid2008.py /path/to/tid2008 --out tid2008.csv [--convert-images]

Then:
    cvssi batch tid2008.csv --out tid2008_scores.csv --threads 8
    cvssi eval tid2008.csv tid2008_scores.csv
"""

import argparse
import re
import sys
from pathlib import Path

# distortion type index -> conventional abbreviation
TYPES = {
    1: "AGN", 2: "ANC", 3: "SCN", 4: "MN", 5: "HFN", 6: "IN", 7: "QN",
    8: "GB", 9: "DEN", 10: "JPEG", 11: "JP2K", 12: "JGTE", 13: "J2TE",
    14: "NEPN", 15: "Block", 16: "MS", 17: "CTC",
}

NAME_RE = re.compile(r"^[iI](\d{2})_(\d{2})_(\d)\.(bmp|BMP)$")


def parse_mos_line(line):
    parts = line.split()
    if len(parts) != 2:
        raise ValueError(f"expected two fields, got: {line!r}")
    # tolerate either column order
    for mos_field, name_field in ((parts[0], parts[1]), (parts[1], parts[0])):
        try:
            return float(mos_field), name_field
        except ValueError:
            continue
    raise ValueError(f"no numeric MOS field in: {line!r}")


def find_case_insensitive(directory, name):
    lower = name.lower()
    for candidate in directory.iterdir():
        if candidate.name.lower() == lower:
            return candidate
    raise FileNotFoundError(f"{name} not found under {directory}")


def to_ppm(bmp_path):
    from PIL import Image  # noqa: import here so --convert-images is optional

    out = bmp_path.with_suffix(".ppm")
    if not out.exists():
        Image.open(bmp_path).convert("RGB").save(out, format="PPM")
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("root", type=Path, help="TID2008 root directory")
    ap.add_argument("--out", type=Path, default=Path("tid2008.csv"))
    ap.add_argument("--convert-images", action="store_true",
                    help="write .ppm siblings of every referenced BMP (needs Pillow)")
    args = ap.parse_args()

    mos_file = args.root / "mos_with_names.txt"
    ref_dir = args.root / "reference_images"
    dist_dir = args.root / "distorted_images"
    for p in (mos_file, ref_dir, dist_dir):
        if not p.exists():
            sys.exit(f"error: {p} does not exist")

    rows = []
    for lineno, line in enumerate(mos_file.read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            mos, name = parse_mos_line(line)
            m = NAME_RE.match(name)
            if not m:
                raise ValueError(f"unrecognized image name {name!r}")
        except ValueError as e:
            sys.exit(f"error: {mos_file}: line {lineno}: {e}")
        ref_idx, type_idx, level = int(m.group(1)), int(m.group(2)), int(m.group(3))

        dist_bmp = find_case_insensitive(dist_dir, name)
        ref_bmp = find_case_insensitive(ref_dir, f"I{ref_idx:02d}.BMP")
        if args.convert_images:
            dist_img = to_ppm(dist_bmp)
            ref_img = to_ppm(ref_bmp)
        else:
            dist_img = dist_bmp.with_suffix(".ppm")
            ref_img = ref_bmp.with_suffix(".ppm")

        rows.append((
            ref_img.resolve().as_posix(),
            dist_img.resolve().as_posix(),
            TYPES.get(type_idx, f"type{type_idx:02d}"),
            level,
            mos,
        ))

    with args.out.open("w") as f:
        f.write("# name: tid2008\n")
        f.write("# orientation: higher-is-better\n")
        f.write("ref_path,dist_path,distortion,level,subjective\n")
        for ref, dist, dist_type, level, mos in rows:
            f.write(f"{ref},{dist},{dist_type},{level},{mos:.12g}\n")
    print(f"wrote {len(rows)} records -> {args.out}")
    if not args.convert_images:
        print("note: manifest references .ppm files; convert the BMPs before batch scoring")


if __name__ == "__main__":
    main()
