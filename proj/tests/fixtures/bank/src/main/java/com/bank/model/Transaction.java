package com.bank.model;

import java.math.BigDecimal;

public class Transaction {
    public BigDecimal amount;
    public String memo = "";
    public final long timestamp = System.currentTimeMillis();

    public static class Builder {
        private BigDecimal amount;

        public Builder amount(BigDecimal amount) {
            this.amount = amount;
            return this;
        }

        public Transaction build() {
            Transaction tx = new Transaction();
            tx.amount = amount;
            return tx;
        }
    }

    public boolean isCredit() {
        return amount.signum() > 0;
    }
}
