/**
 * Shapes of the backend JSON API. Every number the UI displays comes out of
 * one of these responses; the client performs no economic arithmetic.
 */

export interface RateBlock {
  annual_rate: number;
  lifetime_years: number;
}

export interface ValuationBlock {
  form: string;
  cap?: number;
}

/** The override-able parameter set echoed by every response. */
export interface ResolvedParams {
  budget: number;
  market_revenue: number;
  market_scaling: string;
  reference_firms: number;
  rate: RateBlock;
  valuation: ValuationBlock;
  shared_spend?: number;
  direct_transfers?: number;
}

export interface MoneyBlock {
  [key: string]: number;
}

export interface ArchitectureBlock {
  name: string;
  firms: number;
  allocation: MoneyBlock;
  per_firm: MoneyBlock;
  totals: MoneyBlock;
  sustainable_firms: number;
  unbounded: boolean;
  point: { purchases: number; cost: number };
  rounded: {
    allocation: MoneyBlock;
    per_firm: MoneyBlock;
    totals: MoneyBlock;
  };
}

export interface DiagramBlock {
  market_revenue: number;
  market_scaling: string;
  reference_firms: number;
  max_firms: number;
  purchases_range: [number, number];
  cost_range: [number, number];
  resolution: [number, number];
}

export interface BoundaryBlock {
  firms: number;
  slope: number;
  intercept: number;
}

export interface RegionPointBlock {
  label: string;
  purchases: number;
  cost: number;
  sustainable_firms: number;
  unbounded: boolean;
}

export interface RegionResponse {
  program: string;
  resolved: ResolvedParams;
  diagram: DiagramBlock;
  boundaries: BoundaryBlock[];
  grid: { purchases: number[]; cost: number[]; max_firms: number[][] };
  points: RegionPointBlock[];
  architectures: ArchitectureBlock[];
}

export interface ConfigResponse {
  program: string;
  base_year: string;
  resolved: ResolvedParams;
  max_firms: number;
  architectures: string[];
  modules: string[];
  diagram: DiagramBlock;
}

export interface ApiErrorBody {
  error: string;
  binding_constraint?: string;
}

/** Override object POSTed to /api/evaluate and /api/region. */
export interface Overrides {
  market_revenue?: number;
  market_scaling?: string;
  annual_rate?: number;
  lifetime_years?: number;
  budget?: number;
  shared_spend?: number;
  direct_transfers?: number;
  reference_firms?: number;
  valuation?: ValuationBlock;
}

export interface PinnedScenario {
  label: string;
  /** Captured from the API response, not client state, so it replays. */
  resolved: ResolvedParams;
  architectures: ArchitectureBlock[];
  points: RegionPointBlock[];
}
