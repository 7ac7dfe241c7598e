# lindyn-lab package: exact dyadic experiments on the block operator T
