// Bundled example inputs for the config form: small linear orders,
// empty-vocabulary sets, and a one-relation structure.

export interface StructureJson {
  domain: string[];
  arities: Record<string, number>;
  relations: Record<string, string[][]>;
}

export function linearOrder(k: number): StructureJson {
  const domain = Array.from({ length: k }, (_, i) => String(i));
  const lt: string[][] = [];
  for (let i = 0; i < k; i++) {
    for (let j = i + 1; j < k; j++) {
      lt.push([String(i), String(j)]);
    }
  }
  return { domain, arities: { Lt: 2 }, relations: { Lt: lt } };
}

export function bareSet(k: number): StructureJson {
  const domain = Array.from({ length: k }, (_, i) => `e${i}`);
  return { domain, arities: {}, relations: {} };
}

export const pStructure: StructureJson = {
  domain: ["a", "b"],
  arities: { P: 1 },
  relations: { P: [["a"]] },
};

export const structureExamples: Record<string, StructureJson> = {
  "linear order L1": linearOrder(1),
  "linear order L2": linearOrder(2),
  "linear order L3": linearOrder(3),
  "linear order L4": linearOrder(4),
  "bare set of 3": bareSet(3),
  "bare set of 4": bareSet(4),
  "P over {a, b}": pStructure,
};

export const formulaExamples: string[] = [
  "exists x. P(x)",
  "forall x. P(x)",
  "(exists x. P(x)) & (exists y. !P(y))",
  "exists x. forall y. (x = y | Lt(x, y))",
  "forall x. exists y. Lt(x, y)",
  "exists x. (P(x) & !P(x))",
];
