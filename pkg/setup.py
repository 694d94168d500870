from setuptools import setup, find_packages

setup(
    name="hermitian-tiles",
    version="0.1.0",
    description="Tiled, packed and dense hermitian operator storage with k-local channel kernels",
    author="Hermitian Tiles Implementation",
    packages=find_packages(exclude=["examples", "examples.*", "tools"]),
    py_modules=["bench", "bench_timing", "config_loader", "reference_oracle", "verify"],
    python_requires=">=3.8",
    install_requires=[
        "numpy>=1.21.0",
        "scipy>=1.7.0",
        "tqdm>=4.64.0",
        "pyyaml>=5.4.0",
    ],
    extras_require={
        "test": ["pytest>=7.0.0"],
    },
    entry_points={
        "console_scripts": [
            "bench=bench:main",
            "verify=verify:main",
        ],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
)
