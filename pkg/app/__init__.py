# Herd testing analysis package
