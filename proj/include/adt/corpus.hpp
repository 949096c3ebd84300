#pragma once

#include "adt/complex.hpp"

namespace adt {

// simplicial complex from facet vertex lists (vertices are small ints);
// reference orientations follow the sorted vertex order
ComplexPtr simplicial_from_facets(const std::vector<std::vector<int>>& facets,
                                  const std::string& name);

ComplexPtr boundary_of_simplex(int n);  // closed S^{n-1}

ComplexPtr circle3();        // boundary of a triangle
ComplexPtr torus7();         // 7-vertex torus, faces {i,i+1,i+3} and {i,i+2,i+3} mod 7
ComplexPtr rp2_6();          // 6-vertex projective plane
ComplexPtr cp2_9();          // 9-vertex complex projective plane
ComplexPtr wedge_circles();  // two triangles sharing one vertex
ComplexPtr two_points();

ComplexPtr disjoint_union(ComplexPtr a, ComplexPtr b, const std::string& name = "");

// named complexes usable from the CLI; returns nullptr for unknown names
ComplexPtr builtin_complex(const std::string& name);
std::vector<std::string> builtin_complex_names();

}  // namespace adt
