# Exact-arithmetic engine: fields, algebras, modules, decompositions, covers
