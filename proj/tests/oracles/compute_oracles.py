"""Independent reference values frozen into the C++ tests.

Run with python3; nothing here imports the C++ implementation.
"""
import math

import numpy as np
from skimage.color import rgb2lab

R = 6371.0088


def haversine(a, b):
    la1, lo1, la2, lo2 = map(math.radians, (*a, *b))
    h = math.sin((la2 - la1) / 2) ** 2 + math.cos(la1) * math.cos(la2) * math.sin((lo2 - lo1) / 2) ** 2
    return 2 * R * math.asin(math.sqrt(h))


print("haversine")
for a, b in [((0, 0), (0, 1)), ((36.12, -86.67), (33.94, -118.40)), ((51.5007, -0.1246), (40.6892, -74.0445))]:
    print(a, b, repr(haversine(a, b)))

print("eq4", repr(0.6 * (0.8 * 2.0 + 0.2 * 0.5)))

print("lab")
for rgb in [(0, 0, 0), (255, 255, 255), (255, 0, 0), (0, 255, 0), (0, 0, 255), (128, 128, 128), (12, 200, 77), (250, 128, 114)]:
    lab = rgb2lab(np.array([[rgb]], dtype=np.uint8))[0, 0]
    print(rgb, [repr(float(v)) for v in lab])

print("thirds centre distance", repr(math.hypot(1 / 6, 1 / 6)), repr(0.5 / math.hypot(1 / 6, 1 / 6)))


def block_ssim(a, b, block=8):
    c1, c2 = (0.01 * 255) ** 2, (0.03 * 255) ** 2
    h, w = a.shape
    vals = []
    for y in range(0, h - h % block, block):
        for x in range(0, w - w % block, block):
            pa = a[y:y + block, x:x + block].ravel()
            pb = b[y:y + block, x:x + block].ravel()
            ma, mb = pa.mean(), pb.mean()
            va, vb = pa.var(), pb.var()
            cov = ((pa - ma) * (pb - mb)).mean()
            vals.append((2 * ma * mb + c1) * (2 * cov + c2) / ((ma * ma + mb * mb + c1) * (va + vb + c2)))
    return float(np.mean(vals))


def texture(w, h):
    y, x = np.mgrid[0:h, 0:w]
    return ((x * x + 3 * y * y + 7 * x * y) % 251).astype(np.float64)


print("ssim constant 100 vs 110", repr(block_ssim(np.full((32, 48), 100.0), np.full((32, 48), 110.0))))
t = texture(48, 32)
print("ssim texture vs inverted", repr(block_ssim(t, 255.0 - t)))
print("ssim texture vs texture+20", repr(block_ssim(t, np.minimum(t + 20, 255.0))))
